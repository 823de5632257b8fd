#!/usr/bin/env python3
from setuptools import setup, find_packages
setup(
    name="fitdim_utils",
    version="0.1.0",
    description="Dimension of finite free complexes from the ideals of minors of their "
                "differentials",
    long_description="",
    keywords="commutative algebra, free complexes, Fitting ideals, Krull dimension",
    license="GPLv3",
    url="",
    classifiers=[],
    test_suite="tests",
    tests_require=["sympy"],
    install_requires=["numpy", "pyyaml", "sqlalchemy", "sympy"],
    entry_points={
        'console_scripts': ["fitdim = fitdim_utils.cli:main"],
        },
    packages=find_packages(exclude=["tests", "tests.*"])
    )

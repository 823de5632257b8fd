#!/usr/bin/env python3
# Root-level manifest so the package can be installed from the repository root.
# Mirrors fitdim_utils/setup.py; the package sources live in fitdim_utils/.
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
    install_requires=["numpy", "pyyaml", "sqlalchemy", "sympy"],
    entry_points={
        'console_scripts': ["fitdim = fitdim_utils.cli:main"],
        },
    package_dir={"": "fitdim_utils"},
    packages=find_packages("fitdim_utils", exclude=["tests", "tests.*"])
    )

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# Sphinx configuration of the fitdim documentation.
#
import os
import sys
sys.path.insert(0, os.path.abspath('../../fitdim_utils/'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.napoleon',
    'sphinx.ext.intersphinx',
    'sphinx.ext.viewcode',
    'sphinx.ext.mathjax',
    ]

# Google style docstrings with class attributes listed at the top
napoleon_use_ivar = True
napoleon_preprocess_types = False
napoleon_use_keyword = True
napoleon_attr_annotations = False

autosummary_generate = True
autodoc_default_options = {'members': True}

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'fitdim'
copyright = '2026, fitdim developers'
author = 'fitdim developers'
version = '0.1'
release = '0.1.0'

exclude_patterns = []
pygments_style = 'sphinx'
todo_include_todos = False


# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_options = {
    'display_version': True,
    }
html_static_path = []


intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'sqlalchemy': ('https://docs.sqlalchemy.org/', None),
    'sympy': ('https://docs.sympy.org/latest/', None),
    }

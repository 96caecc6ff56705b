import os
import sys

# Add project root to sys.path
sys.path.insert(0, os.path.abspath('..'))

project = 'Sounder'
author = 'Sounder'
release = '0.1'

extensions = ['docs.ext.models']

templates_path = ['_templates']
exclude_patterns = []

html_theme = 'alabaster'
html_static_path = ['_static']

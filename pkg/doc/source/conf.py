# -*- coding: utf-8 -*-
#
# Sphinx configuration for the kenglid documentation.

import os
import sys
import sphinx_rtd_theme
from mock import Mock as MagicMock

sys.path.insert(0, os.path.abspath('../..'))

from kenglid import __version__  # noqa


class Mock(MagicMock):
    @classmethod
    def __getattr__(cls, name):
        return MagicMock()


# heavy runtime dependencies, not needed to render the API pages
MOCK_MODULES = ['torch', 'torch.nn', 'transformers']
sys.modules.update((mod_name, Mock()) for mod_name in MOCK_MODULES)

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.doctest',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon']

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'kenglid'
author = u'kenglid contributors'
version = __version__
release = __version__

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_theme_path = [sphinx_rtd_theme.get_html_theme_path()]
html_static_path = ['_static']
htmlhelp_basename = 'kengliddoc'

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'kenglid', u'kenglid Documentation',
     [author], 1)
]

# -- Local options --------------------------------------------------------
nitpicky = True

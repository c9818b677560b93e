# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
#  Purpose: Word-level language identification for code-mixed Kannada-English
#   Author: kenglid contributors
#
# -----------------------------------------------------------------------------
"""
kenglid
=======

Train, run, and score word-level language identifiers for code-mixed
Kannada-English text.

:license:
    CC0 1.0 Universal
    http://creativecommons.org/publicdomain/zero/1.0/
"""


__version__ = "0.1.0"

#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Version information for fracspectral
"""

__version__ = "0.1.0"
__version_info__ = tuple(int(x) for x in __version__.split("."))

# Version history
VERSION_HISTORY = [
    "0.1.0 - Initial release: Nystrom eigenbasis, Mittag-Leffler mode solutions, verification report",
]

#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""バージョン情報"""

__version__ = "1.0.0"

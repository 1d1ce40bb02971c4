# -*- coding: utf-8 -*-
"""
Structure factors, structural witnesses, and the bounds derived from witness values.
"""

# -*- coding: utf-8 -*-
"""
State builders and the gate-level transformation onto the phased Dicke state.
"""

# -*- coding: utf-8 -*-
"""
dickelab project overview

Exact small-register simulation of 4-qubit phased Dicke states, their decoherence
channels, and structural entanglement witnesses.
"""

__version__ = "0.1.0"

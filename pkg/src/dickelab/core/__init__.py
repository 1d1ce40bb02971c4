# -*- coding: utf-8 -*-
"""
Dense state, operator, Pauli and Kraus-channel algebra on registers of up to 8 qubits.
"""

"""Toolkit for the sealing calculus, its STLC encoding, and DCC_pc."""

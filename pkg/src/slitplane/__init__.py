"""Exact series engine, walk enumerator and identity checks for slit-plane walks."""

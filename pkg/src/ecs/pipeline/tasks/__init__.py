"""Task helpers and nodes for figure sweeps."""

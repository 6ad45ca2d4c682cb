"""Alexandroff paratopological groups, executable."""

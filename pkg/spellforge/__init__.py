"""
SpellForge - Generador de variantes ortográficas a partir de modelos de vectores densos
"""

__version__ = "1.0.0"
__author__ = "SpellForge Team"

"""
Modelos de datos para SpellForge
"""

"""
Algoritmos, persistencia y utilidades
"""

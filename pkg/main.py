#!/usr/bin/env python3
"""
SpellForge - Spelling Variant Generator
Herramienta de línea de comandos para generar variantes ortográficas de palabras clave
Author: SpellForge Team
"""

import os
import sys

# Añadir el directorio del proyecto al path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from spellforge.cli.main_cli import main


if __name__ == "__main__":
    sys.exit(main())

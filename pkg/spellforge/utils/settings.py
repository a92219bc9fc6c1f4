"""
============================================================
CONFIGURACIÓN POR DEFECTO - SPELLFORGE
============================================================

PARÁMETROS DE GENERACIÓN (configuración de prueba):
- lt  = 0.75   umbral del ratio de Levenshtein
- ssl = 4000   vecinos semánticos por término expandido
- k   = 0.05   recompensa/penalización máxima de los pesos posicionales

PERFIL DE PESOS:
- Buckets de 0.2 -> cinco pesos sobre posiciones relativas [0, 1]
- Ventana "auto" -> max(3, len(keyword) // 2)

BARRIDO DE UMBRALES:
- lt de 0.55 a 0.95 con paso 0.05 (9 filas por modo)
- F_1 y F_1/4

NOTAS IMPORTANTES:
1. SPELLFORGE_MODEL define la ruta del modelo por defecto
2. Los archivos .bin se leen en formato word2vec binario
3. Los códigos de salida son estables: los scripts dependen de ellos

============================================================
"""

import os
from pathlib import Path
from typing import List, Optional

# Variable de entorno con la ruta del modelo por defecto
MODEL_ENV_VAR = 'SPELLFORGE_MODEL'

# Valores por defecto
DEFAULTS = {
    'lt': 0.75,                 # Umbral del ratio de Levenshtein
    'ssl': 4000,                # Límite de búsqueda semántica
    'scale': 0.05,              # k: recompensa/penalización máxima
    'bucket_width': 0.2,        # Ancho de bucket de posición relativa
    'window': None,             # None = ventana automática por keyword
    'mode': 'default',          # default | weighted
    'denominator': 'length_sum',
    'betas': (1.0, 0.25),       # F_1 y F_1/4
    'sweep_start': 0.55,
    'sweep_stop': 0.95,
    'sweep_step': 0.05,
    'max_fuzzy_distance': 6,    # Tope de min(6, len(keyword) - 2)
    'min_window': 3,
    'workers': 1,
    'chunk_size': 10000,        # Líneas por bloque al contar en el corpus
    'test_size': 0.5,           # Fracción de keywords reservadas para evaluación
    'split_seed': 0,
}

# Formatos de archivo reconocidos
FILE_FORMATS = {
    'model': ('word2vec-text', 'word2vec-binary'),
    'output': ('structured', 'flat'),
    'binary_suffixes': ('.bin',),
    'structured_suffixes': ('.json',),
}

# Códigos de salida de la línea de comandos
EXIT_CODES = {
    'ok': 0,
    'unexpected': 1,
    'usage': 2,
    'invalid_range': 3,
    'missing_file': 4,
    'model_load': 5,
    'learning': 6,
    'evaluation': 7,
    'vocabulary': 8,
}


def get_default_model_path() -> Optional[str]:
    """
    Obtener la ruta del modelo configurada en el entorno

    Returns:
        Ruta del modelo o None si la variable no está definida
    """
    value = os.environ.get(MODEL_ENV_VAR, '').strip()
    return value or None


def infer_model_format(path: str) -> str:
    """Deducir el formato word2vec a partir de la extensión del archivo"""
    if Path(path).suffix.lower() in FILE_FORMATS['binary_suffixes']:
        return 'word2vec-binary'
    return 'word2vec-text'


def default_sweep_grid() -> List[float]:
    """
    Obtener la rejilla de umbrales del barrido por defecto

    Returns:
        Lista de valores lt (0.55, 0.60, ..., 0.95)
    """
    start = DEFAULTS['sweep_start']
    step = DEFAULTS['sweep_step']
    count = int(round((DEFAULTS['sweep_stop'] - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count)]

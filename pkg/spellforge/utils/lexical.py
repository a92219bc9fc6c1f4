"""
Distancia de edición y ratios de similitud léxica

- edit_distance: Levenshtein con costes configurables
- lev_ratio: ratio con sustitución de coste 2
- weighted_lev_ratio: media ponderada de ratios en una ventana deslizante,
  con pesos por bucket de posición relativa
"""

import math
from typing import List, Tuple, Union

import Levenshtein

from spellforge.models.edit_costs import RATIO_COSTS, SEARCH_COSTS, EditCosts, RatioDenominator
from spellforge.models.weight_profile import WeightProfile, bucket_count
from spellforge.utils.errors import UndefinedInputError

# Ventana mínima: el análisis usa 2 < n <= len(keyword) / 2
MIN_WINDOW = 3

WindowPair = Tuple[int, int, str, str]


def edit_distance(a: str, b: str, costs: EditCosts = SEARCH_COSTS) -> int:
    """
    Coste del guion de edición más barato que transforma `a` en `b`

    Args:
        a: Cadena origen
        b: Cadena destino
        costs: Costes de inserción, borrado y sustitución

    Returns:
        Distancia entera no negativa
    """
    return int(Levenshtein.distance(a, b, weights=costs.as_weights()))


def _coerce_denominator(denominator: Union[RatioDenominator, str]) -> RatioDenominator:
    return denominator if isinstance(denominator, RatioDenominator) else RatioDenominator(denominator)


def lev_ratio(a: str, b: str,
              denominator: Union[RatioDenominator, str] = RatioDenominator.LENGTH_SUM) -> float:
    """
    Ratio de Levenshtein con sustitución de coste 2

    Args:
        a: Keyword
        b: Candidato
        denominator: Suma de longitudes (por defecto) o longitud máxima

    Returns:
        Similitud en [0, 1]; 1 si y solo si a == b

    Raises:
        UndefinedInputError: Si ambas cadenas están vacías
    """
    if not a and not b:
        raise UndefinedInputError("El ratio de Levenshtein no está definido para dos cadenas vacías")

    distance = edit_distance(a, b, RATIO_COSTS)
    if _coerce_denominator(denominator) is RatioDenominator.MAX_LENGTH:
        return max(0.0, 1.0 - distance / max(len(a), len(b)))
    return 1.0 - distance / (len(a) + len(b))


def default_window(keyword: str) -> int:
    """Ventana automática: max(3, len(keyword) // 2)"""
    return max(MIN_WINDOW, len(keyword) // 2)


def pair_window(a: str, b: str) -> int:
    """Ventana automática de un par: la de la cadena más corta (no depende del orden)"""
    return default_window(a if len(a) <= len(b) else b)


def window_pairs(a: str, b: str, window: int) -> List[WindowPair]:
    """
    Recorrer ambas cadenas con una ventana deslizante desde el mismo índice

    Las ventanas se recortan al final de cada cadena (sin relleno).

    Args:
        a: Keyword
        b: Candidato
        window: Longitud n de la ventana

    Returns:
        Lista de (p, P, a[p:p+n], b[p:p+n]) con P el número de posiciones
    """
    if window < 1:
        raise ValueError(f"La ventana debe ser positiva, recibido: {window}")
    longest = max(len(a), len(b))
    positions = max(1, longest - window + 1)
    return [(p, positions, a[p:p + window], b[p:p + window]) for p in range(positions)]


def relative_position_bucket(p: int, P: int, bucket_width: float) -> int:
    """
    Bucket de la posición relativa p / (P - 1)

    Args:
        p: Índice de inicio de la ventana
        P: Número de posiciones de ventana
        bucket_width: Ancho de bucket en (0, 1]

    Returns:
        Índice de bucket; la posición relativa 1 cae en el último
    """
    if not 0 <= p < P:
        raise ValueError(f"Posición fuera de rango: p={p}, P={P}")
    buckets = bucket_count(bucket_width)
    if P == 1:
        return 0
    relative = p / (P - 1)
    # El épsilon evita que 0.6 / 0.2 caiga en el bucket 2
    return min(math.floor(relative / bucket_width + 1e-9), buckets - 1)


def weighted_lev_ratio(a: str, b: str, profile: WeightProfile,
                       denominator: Union[RatioDenominator, str] = RatioDenominator.LENGTH_SUM) -> float:
    """
    Ratio de Levenshtein ponderado por posición

    Se calcula lev_ratio en cada ventana y se devuelve la media ponderada
    por el peso del bucket de cada posición, por lo que el resultado queda
    en [0, 1].

    Args:
        a: Keyword
        b: Candidato
        profile: Perfil de pesos
        denominator: Convención de lev_ratio para cada ventana

    Returns:
        Similitud ponderada en [0, 1]
    """
    if not a and not b:
        raise UndefinedInputError("El ratio de Levenshtein no está definido para dos cadenas vacías")

    window = profile.window if profile.window is not None else pair_window(a, b)
    weighted_sum = 0.0
    total_weight = 0.0
    for p, positions, window_a, window_b in window_pairs(a, b, window):
        weight = profile.weight_for(relative_position_bucket(p, positions, profile.bucket_width))
        weighted_sum += weight * lev_ratio(window_a, window_b, denominator)
        total_weight += weight
    return weighted_sum / total_weight

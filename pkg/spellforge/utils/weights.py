"""
Aprendizaje del perfil de pesos posicionales a partir de pares etiquetados
"""

import logging
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from spellforge.models.edit_costs import RATIO_COSTS, EditCosts
from spellforge.models.weight_profile import (MIN_WEIGHT, LabeledPair, PositionDistributions,
                                              WeightProfile, bucket_count)
from spellforge.utils.errors import LearningError
from spellforge.utils.lexical import edit_distance, pair_window, relative_position_bucket, window_pairs

logger = logging.getLogger(__name__)


def estimate_distributions(pairs: Sequence[LabeledPair], window: Optional[int] = None,
                           bucket_width: float = 0.2,
                           costs: EditCosts = RATIO_COSTS) -> PositionDistributions:
    """
    Distancia de edición media por bucket de posición, separada por clase

    Para cada par y cada posición de ventana se acumula la distancia de las
    subcadenas en el bucket de su posición relativa.

    Args:
        pairs: Pares etiquetados (al menos uno de cada clase)
        window: Longitud de ventana; None = automática por par (cadena más corta)
        bucket_width: Ancho de bucket
        costs: Costes de edición (por defecto, la convención del ratio)

    Returns:
        PositionDistributions con medias y recuentos por bucket

    Raises:
        LearningError: Si falta alguna de las dos clases
    """
    pairs = list(pairs)
    true_pairs = [pair for pair in pairs if pair.is_misspelling]
    false_pairs = [pair for pair in pairs if not pair.is_misspelling]
    if not true_pairs:
        raise LearningError("No hay pares de la clase 'misspelling verdadero' (etiqueta 1)")
    if not false_pairs:
        raise LearningError("No hay pares de la clase 'falso positivo' (etiqueta 0)")

    buckets = bucket_count(bucket_width)
    sums = {True: np.zeros(buckets), False: np.zeros(buckets)}
    counts = {True: np.zeros(buckets, dtype=np.int64), False: np.zeros(buckets, dtype=np.int64)}

    for pair in pairs:
        size = window if window is not None else pair_window(pair.keyword, pair.candidate)
        label = bool(pair.is_misspelling)
        for p, positions, window_a, window_b in window_pairs(pair.keyword, pair.candidate, size):
            bucket = relative_position_bucket(p, positions, bucket_width)
            sums[label][bucket] += edit_distance(window_a, window_b, costs)
            counts[label][bucket] += 1

    def _means(label: bool) -> List[float]:
        means = np.where(counts[label] > 0, sums[label] / np.maximum(counts[label], 1), 0.0)
        return [float(m) for m in means]

    distributions = PositionDistributions(
        bucket_width=bucket_width,
        window=window,
        tpldist=_means(True),
        fpldist=_means(False),
        tp_counts=[int(c) for c in counts[True]],
        fp_counts=[int(c) for c in counts[False]],
        tp_pairs=len(true_pairs),
        fp_pairs=len(false_pairs),
        costs=costs.to_dict(),
    )
    logger.info(
        f"Distribuciones estimadas: {len(true_pairs)} verdaderos, {len(false_pairs)} falsos, "
        f"{buckets} buckets"
    )
    return distributions


def _stretch_deviations(deviations: np.ndarray) -> np.ndarray:
    """
    Llevar las desviaciones respecto a 1 a [-1, 1]

    Cada lado de la mediana se escala por separado, de modo que la mayor
    desviación positiva vale +1 y la mayor negativa -1.
    """
    stretched = np.zeros_like(deviations)
    positive = deviations > 0
    negative = deviations < 0
    if positive.any():
        stretched[positive] = deviations[positive] / deviations[positive].max()
    if negative.any():
        stretched[negative] = deviations[negative] / -deviations[negative].min()
    return stretched


def learn_profile(dist: PositionDistributions, scale: float = 0.05,
                  window: Optional[int] = None,
                  bucket_width: Optional[float] = None) -> WeightProfile:
    """
    Aprender el perfil de pesos: fpldist / tpldist normalizado por la mediana
    y escalado a la banda [1 - k, 1 + k]

    Args:
        dist: Distribuciones estimadas
        scale: k en (0, 1], recompensa/penalización máxima
        window: Ventana del perfil (por defecto la de las distribuciones)
        bucket_width: Debe coincidir con el de las distribuciones si se indica

    Returns:
        WeightProfile con el bucket mediano en 1

    Raises:
        LearningError: Si k está fuera de rango, hay buckets vacíos o
            tpldist es cero en algún bucket
    """
    if isinstance(scale, bool) or not isinstance(scale, (int, float)) or not 0 < scale <= 1:
        raise LearningError(f"La escala k debe estar en (0, 1], recibido: {scale}")

    if bucket_width is not None and abs(bucket_width - dist.bucket_width) > 1e-12:
        raise LearningError(
            f"El ancho de bucket ({bucket_width}) no coincide con el de las distribuciones ({dist.bucket_width})"
        )
    window = dist.window if window is None else window

    empty = dist.empty_buckets()
    if empty:
        raise LearningError(
            f"Buckets sin datos: {empty}. Use un conjunto de datos mayor o buckets más anchos"
        )

    tpldist = np.asarray(dist.tpldist, dtype=np.float64)
    fpldist = np.asarray(dist.fpldist, dtype=np.float64)
    zero = [int(i) for i in np.flatnonzero(tpldist == 0)]
    if zero:
        raise LearningError(
            f"Distancia media nula para misspellings verdaderos en los buckets {zero}. "
            f"Use un conjunto de datos mayor o buckets más anchos"
        )

    raw = fpldist / tpldist
    median = float(np.median(raw))
    if median <= 0:
        raise LearningError(
            "La mediana de fpldist / tpldist es cero: los falsos positivos no difieren en la mayoría de posiciones"
        )

    normalized = raw / median
    weights = 1.0 + scale * _stretch_deviations(normalized - 1.0)
    weights = np.maximum(weights, MIN_WEIGHT)

    profile = WeightProfile(
        weights=tuple(float(w) for w in weights),
        bucket_width=dist.bucket_width,
        window=window,
        scale=float(scale),
    )
    logger.info(f"Perfil aprendido: pesos {[round(w, 4) for w in profile.weights]} (k={scale})")
    return profile


def label_candidates(keyword: str,
                     candidates: Iterable[Union[str, Tuple[str, int]]],
                     gold: Set[str]) -> List[LabeledPair]:
    """
    Etiquetar candidatos difusos con el gold standard

    Los candidatos presentes en el gold son misspellings verdaderos; el resto
    son falsos positivos dentro del rango de distancia.

    Args:
        keyword: Keyword original
        candidates: Candidatos (o pares candidato, distancia)
        gold: Misspellings verdaderos de la keyword

    Returns:
        Lista de pares etiquetados en el orden de entrada
    """
    pairs: List[LabeledPair] = []
    seen: Set[str] = set()
    for item in candidates:
        candidate = item if isinstance(item, str) else item[0]
        if candidate == keyword or candidate in seen:
            continue
        seen.add(candidate)
        pairs.append(LabeledPair(keyword, candidate, candidate in gold))
    return pairs


def class_balance(pairs: Iterable[LabeledPair]) -> Dict[str, int]:
    """Recuento de pares por clase"""
    pairs = list(pairs)
    positives = sum(1 for pair in pairs if pair.is_misspelling)
    return {'true': positives, 'false': len(pairs) - positives}

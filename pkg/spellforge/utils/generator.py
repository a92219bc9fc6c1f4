"""
Generación recursiva de variantes ortográficas

Se expande una pila de términos: para cada término se obtienen sus `ssl`
vecinos semánticos y se aceptan los que superan el umbral léxico `lt`
frente a la semilla original (nunca frente al término expandido). Cada
variante nueva se apila y el proceso termina cuando la pila se vacía.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from spellforge.models.variant_set import BatchResult, GenerationConfig, Variant, VariantSet
from spellforge.models.vector_model import VectorModel
from spellforge.utils.errors import BatchError, ConfigurationError, OutOfVocabularyError
from spellforge.utils.lexical import lev_ratio, weighted_lev_ratio

logger = logging.getLogger(__name__)

OOV_HINT = ("La semilla no está en el modelo; use el comando 'candidates' para buscar "
            "formas cercanas en el vocabulario")


def normalize_seed(seed: str, config: GenerationConfig) -> str:
    """Normalizar la semilla antes de buscarla en el modelo"""
    seed = seed.strip()
    return seed.lower() if config.case_fold else seed


def make_scorer(seed: str, config: GenerationConfig) -> Callable[[str], float]:
    """
    Función de similitud léxica frente a la semilla según el modo

    Raises:
        ConfigurationError: Si el modo weighted no tiene perfil
    """
    if config.mode == 'weighted':
        profile = config.profile
        if profile is None:
            raise ConfigurationError("El modo weighted requiere un perfil de pesos")
        return lambda token: weighted_lev_ratio(seed, token, profile, config.denominator)
    return lambda token: lev_ratio(seed, token, config.denominator)


def generate_variants(seed: str, model: VectorModel, config: GenerationConfig) -> VariantSet:
    """
    Generar el cierre de variantes de una semilla

    Args:
        seed: Keyword semilla
        model: Modelo de vectores
        config: Parámetros ssl, lt y modo

    Returns:
        VariantSet con cada variante aceptada y su ratio frente a la semilla

    Raises:
        OutOfVocabularyError: Si la semilla no está en el vocabulario
    """
    key = normalize_seed(seed, config)
    if key not in model:
        raise OutOfVocabularyError(key, hint=OOV_HINT)

    score = make_scorer(key, config)
    ratios: Dict[str, float] = {}
    accepted: Dict[str, Variant] = {}

    # Pila LIFO de términos por expandir; el cierre no depende del orden
    frontier: List[str] = [key]
    seen = {key}
    expanded = 0

    while frontier:
        term = frontier.pop()
        expanded += 1
        neighbors = model.most_similar(term, config.ssl)
        found = 0
        for neighbor in neighbors:
            token = neighbor.token
            if token == key:
                continue
            ratio = ratios.get(token)
            if ratio is None:
                ratio = score(token)
                ratios[token] = ratio
            if ratio < config.lt:
                continue
            if token not in accepted:
                accepted[token] = Variant(token, ratio, model.cosine(key, token))
                found += 1
            if token not in seen:
                seen.add(token)
                frontier.append(token)
        logger.debug(f"'{term}': {len(neighbors)} vecinos, {found} variantes nuevas")

    variant_set = VariantSet.build(key, accepted.values(), config)
    logger.info(f"Semilla '{key}': {len(variant_set)} variantes tras expandir {expanded} términos")
    return variant_set


def generate_batch(seeds: Sequence[str], model: VectorModel, config: GenerationConfig,
                   workers: int = 1) -> BatchResult:
    """
    Generar variantes para varias semillas

    Las semillas fuera de vocabulario se listan en `skipped` sin abortar el
    lote. Con workers > 1 las semillas se procesan en hilos; el modelo es de
    solo lectura y el orden del resultado es el de entrada.

    Args:
        seeds: Semillas (no vacío)
        model: Modelo de vectores
        config: Parámetros de generación
        workers: Número de hilos

    Returns:
        BatchResult con un VariantSet por semilla válida

    Raises:
        ValueError: Si la lista de semillas está vacía
        BatchError: Si todas las semillas están fuera de vocabulario
    """
    if not seeds:
        raise ValueError("La lista de semillas no puede estar vacía")

    unique: Dict[str, str] = {}
    for seed in seeds:
        unique.setdefault(normalize_seed(seed, config), seed)

    def _run(seed: str) -> Optional[VariantSet]:
        try:
            return generate_variants(seed, model, config)
        except OutOfVocabularyError as e:
            logger.warning(f"Semilla omitida: {e}")
            return None

    originals = list(unique.values())
    if workers > 1 and len(originals) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run, originals))
    else:
        outcomes = [_run(seed) for seed in originals]

    batch = BatchResult()
    for original, outcome in zip(originals, outcomes):
        if outcome is None:
            batch.skipped.append(original)
        else:
            batch.results[outcome.seed] = outcome

    if not batch.results:
        raise BatchError(f"Todas las semillas están fuera de vocabulario: {batch.skipped}", batch.skipped)

    logger.info(f"Lote completado: {len(batch.results)} semillas, {len(batch.skipped)} omitidas")
    return batch

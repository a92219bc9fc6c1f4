"""
Evaluación intrínseca y extrínseca

- score / threshold_sweep: precisión, recall y F_beta frente a un gold standard
- fuzzy_candidates: candidatos para construir el gold standard
- retrieval_count / retrieval_gain: documentos recuperados con y sin variantes
- gold_statistics, distance_histogram, split_gold, best_rows: análisis del gold
"""

import itertools
import logging
import re
from collections import Counter, deque
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import (Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple,
                    Union)

import Levenshtein
import numpy as np

from spellforge.models.edit_costs import SEARCH_COSTS, EditCosts
from spellforge.models.evaluation import EvalReport, GoldStandard, SweepRow, beta_label
from spellforge.models.variant_set import GenerationConfig, VariantSet
from spellforge.models.vector_model import VectorModel
from spellforge.utils.errors import (ConfigurationError, CorpusReadError, EvaluationError,
                                     ThresholdError, UndefinedGainError)
from spellforge.utils.generator import generate_batch, normalize_seed
from spellforge.utils.lexical import edit_distance

logger = logging.getLogger(__name__)

DEFAULT_BETAS = (1.0, 0.25)

# Tokens: secuencias alfanuméricas (el guion bajo separa n-gramas)
TOKEN_PATTERN = re.compile(r"[^\W_]+")


# ============================================================
# Métricas
# ============================================================

def f_beta(precision: float, recall: float, beta: float) -> float:
    """
    F_beta = (1 + beta^2) * P * R / (beta^2 * P + R)

    Returns:
        0.0 cuando el denominador es cero
    """
    b2 = beta * beta
    denominator = b2 * precision + recall
    if denominator == 0:
        return 0.0
    return (1 + b2) * precision * recall / denominator


def report_from_counts(tp: int, fp: int, fn: int,
                       betas: Sequence[float] = DEFAULT_BETAS) -> EvalReport:
    """Construir un informe a partir de los recuentos"""
    undefined = []
    if tp + fp > 0:
        precision = tp / (tp + fp)
    else:
        precision = 0.0
        undefined.append('precision')
    if tp + fn > 0:
        recall = tp / (tp + fn)
    else:
        recall = 0.0
        undefined.append('recall')

    f_scores = {}
    for beta in betas:
        f_scores[beta] = f_beta(precision, recall, beta)
        if precision == 0 and recall == 0:
            undefined.append(beta_label(beta))
    return EvalReport(tp=tp, fp=fp, fn=fn, precision=precision, recall=recall,
                      f_scores=f_scores, undefined=tuple(undefined))


def score(predictions: Mapping[str, Iterable[str]], gold: GoldStandard,
          betas: Sequence[float] = DEFAULT_BETAS) -> EvalReport:
    """
    Evaluar predicciones frente al gold standard

    Los recuentos se agregan sobre todas las keywords predichas (micro);
    el informe incluye los subinformes por keyword y su media (macro).

    Args:
        predictions: keyword -> variantes predichas
        gold: Gold standard
        betas: Valores de beta para F_beta

    Returns:
        EvalReport agregado

    Raises:
        EvaluationError: Si el gold está vacío o hay keywords desconocidas
    """
    if len(gold) == 0:
        raise EvaluationError("El gold standard está vacío")
    betas = tuple(float(beta) for beta in betas)
    if not betas or any(beta <= 0 for beta in betas):
        raise EvaluationError(f"Los valores de beta deben ser positivos: {betas}")

    unknown = sorted(keyword for keyword in predictions if keyword not in gold)
    if unknown:
        raise EvaluationError(f"Keywords sin entrada en el gold standard: {unknown}", unknown)

    per_keyword: Dict[str, EvalReport] = {}
    tp = fp = fn = 0
    for keyword in sorted(predictions):
        predicted = set(predictions[keyword])
        predicted.discard(keyword)
        expected = gold[keyword]
        k_tp = len(predicted & expected)
        k_fp = len(predicted - expected)
        k_fn = len(expected - predicted)
        per_keyword[keyword] = report_from_counts(k_tp, k_fp, k_fn, betas)
        tp, fp, fn = tp + k_tp, fp + k_fp, fn + k_fn

    report = report_from_counts(tp, fp, fn, betas)
    report.per_keyword = per_keyword
    if per_keyword:
        reports = list(per_keyword.values())
        report.macro = {
            'precision': float(np.mean([r.precision for r in reports])),
            'recall': float(np.mean([r.recall for r in reports])),
        }
        for beta in betas:
            report.macro[beta_label(beta)] = float(np.mean([r.f_scores[beta] for r in reports]))

    logger.info(f"Evaluación: tp={tp} fp={fp} fn={fn} P={report.precision:.4f} R={report.recall:.4f}")
    return report


def threshold_sweep(seeds: Sequence[str], model: VectorModel, config: GenerationConfig,
                    gold: GoldStandard, lt_values: Sequence[float],
                    betas: Sequence[float] = DEFAULT_BETAS,
                    modes: Optional[Sequence[str]] = None,
                    workers: int = 1) -> List[SweepRow]:
    """
    Evaluar la generación para cada umbral lt y cada modo

    Las semillas fuera de vocabulario cuentan como predicciones vacías.

    Args:
        seeds: Keywords a generar
        model: Modelo de vectores
        config: Plantilla de configuración (ssl, perfil, case_fold...)
        gold: Gold standard
        lt_values: Umbrales a evaluar
        betas: Valores de beta
        modes: Modos a barrer; por defecto ambos si la plantilla tiene perfil
        workers: Hilos para la generación por lotes

    Returns:
        Una fila por (modo, lt), en ese orden
    """
    if not lt_values:
        raise ConfigurationError("La lista de umbrales lt no puede estar vacía")
    for lt in lt_values:
        if not 0 <= lt <= 1:
            raise ConfigurationError(f"Umbral lt fuera de [0, 1]: {lt}")

    if modes is None:
        modes = ('default', 'weighted') if config.profile is not None else (config.mode,)

    rows: List[SweepRow] = []
    for mode in modes:
        for lt in lt_values:
            run_config = config.replace(lt=float(lt), mode=mode)
            batch = generate_batch(seeds, model, run_config, workers=workers)
            predictions: Dict[str, Set[str]] = batch.predictions()
            for skipped in batch.skipped:
                predictions.setdefault(normalize_seed(skipped, run_config), set())
            report = score(predictions, gold, betas)
            rows.append(SweepRow(mode=mode, lt=float(lt), report=report))
            logger.info(f"Barrido {mode} lt={lt}: R={report.recall:.4f} P={report.precision:.4f}")
    return rows


def best_rows(rows: Iterable[SweepRow], beta: float) -> Dict[str, SweepRow]:
    """
    Mejor fila por modo según F_beta (el primer umbral gana en empates)

    Returns:
        modo -> fila con la F_beta máxima
    """
    best: Dict[str, SweepRow] = {}
    for row in rows:
        current = best.get(row.mode)
        if current is None or row.report.f_scores[beta] > current.report.f_scores[beta]:
            best[row.mode] = row
    return best


# ============================================================
# Construcción y análisis del gold standard
# ============================================================

def fuzzy_threshold(keyword: str, max_distance: int = 6) -> int:
    """
    Umbral min(6, len(keyword) - 2)

    Raises:
        ThresholdError: Si la keyword tiene menos de 3 caracteres
    """
    if len(keyword) < 3:
        raise ThresholdError(
            f"La keyword '{keyword}' es demasiado corta: el umbral min({max_distance}, len - 2) no es positivo"
        )
    return min(max_distance, len(keyword) - 2)


def fuzzy_candidates(keyword: str, vocabulary: Iterable[str],
                     max_distance: int = 6) -> List[Tuple[str, int]]:
    """
    Tokens del vocabulario a distancia de edición <= min(6, len(keyword) - 2)

    Se usa la distancia de Levenshtein clásica (sustitución de coste 1).

    Args:
        keyword: Keyword de al menos 3 caracteres
        vocabulary: Tokens candidatos
        max_distance: Tope de la distancia

    Returns:
        Lista de (candidato, distancia) por distancia y token ascendentes
    """
    threshold = fuzzy_threshold(keyword, max_distance)
    candidates: List[Tuple[str, int]] = []
    for token in dict.fromkeys(vocabulary):
        if token == keyword or abs(len(token) - len(keyword)) > threshold:
            continue
        distance = Levenshtein.distance(keyword, token, weights=SEARCH_COSTS.as_weights(),
                                        score_cutoff=threshold)
        if distance <= threshold:
            candidates.append((token, int(distance)))
    candidates.sort(key=lambda item: (item[1], item[0]))
    logger.info(f"Candidatos para '{keyword}' (umbral {threshold}): {len(candidates)}")
    return candidates


def gold_statistics(gold: GoldStandard) -> Dict:
    """
    Distribución de misspellings por keyword

    Returns:
        Diccionario con recuentos por keyword, total y media
    """
    counts = {keyword: len(gold[keyword]) for keyword in gold.keywords}
    total = sum(counts.values())
    return {
        'keywords': len(counts),
        'total': total,
        'mean': total / len(counts) if counts else 0.0,
        'per_keyword': counts,
    }


def distance_histogram(gold: GoldStandard, costs: EditCosts = SEARCH_COSTS) -> Dict[int, int]:
    """Número de misspellings del gold por distancia de edición a su keyword"""
    histogram = Counter(edit_distance(keyword, misspelling, costs)
                        for keyword, misspelling in gold.pairs())
    return dict(sorted(histogram.items()))


def split_gold(gold: GoldStandard, test_size: float = 0.5,
               seed: int = 0) -> Tuple[GoldStandard, GoldStandard]:
    """
    Dividir las keywords del gold en desarrollo y evaluación

    Args:
        gold: Gold standard con al menos dos keywords
        test_size: Fracción de keywords para evaluación, en (0, 1)
        seed: Semilla del generador aleatorio

    Returns:
        Tupla (entrenamiento, evaluación)
    """
    if not 0 < test_size < 1:
        raise ValueError(f"test_size debe estar en (0, 1), recibido: {test_size}")
    keywords = gold.keywords
    if len(keywords) < 2:
        raise EvaluationError("Se necesitan al menos dos keywords para dividir el gold standard")

    n_test = min(len(keywords) - 1, max(1, int(round(len(keywords) * test_size))))
    order = np.random.default_rng(seed).permutation(len(keywords))
    test = sorted(keywords[i] for i in order[:n_test])
    train = sorted(keywords[i] for i in order[n_test:])
    return gold.subset(train), gold.subset(test)


# ============================================================
# Evaluación extrínseca
# ============================================================

def tokenize(text: str) -> List[str]:
    """Separar en tokens alfanuméricos en minúsculas"""
    return TOKEN_PATTERN.findall(text.lower())


def expand_keywords(seeds: Iterable[str],
                    variant_sets: Union[Mapping[str, VariantSet], Iterable[VariantSet]]) -> Set[str]:
    """Semillas más todas sus variantes generadas"""
    if isinstance(variant_sets, Mapping):
        variant_sets = variant_sets.values()
    expanded = set(seeds)
    for variant_set in variant_sets:
        expanded.add(variant_set.seed)
        expanded.update(variant_set.tokens)
    return expanded


def _compile_keywords(keywords: Iterable[str]) -> Tuple[Set[str], List[Tuple[str, ...]]]:
    """Separar keywords de un token y de varios tokens (n-gramas)"""
    singles: Set[str] = set()
    phrases: Set[Tuple[str, ...]] = set()
    for keyword in keywords:
        tokens = tuple(tokenize(keyword))
        if not tokens:
            logger.warning(f"Keyword sin tokens alfanuméricos ignorada: {keyword!r}")
        elif len(tokens) == 1:
            singles.add(tokens[0])
        else:
            phrases.add(tokens)
    return singles, sorted(phrases)


def _document_matches(tokens: List[str], singles: Set[str], phrases: List[Tuple[str, ...]]) -> bool:
    if singles.intersection(tokens):
        return True
    for phrase in phrases:
        size = len(phrase)
        for start in range(len(tokens) - size + 1):
            if tuple(tokens[start:start + size]) == phrase:
                return True
    return False


def _count_chunk(lines: List[str], singles: Set[str], phrases: List[Tuple[str, ...]]) -> int:
    return sum(1 for line in lines if _document_matches(tokenize(line), singles, phrases))


def _iter_corpus(corpus: Union[str, Path, Iterable[str]]) -> Iterator[str]:
    if isinstance(corpus, (str, Path)):
        path = Path(corpus)
        try:
            with open(path, 'r', encoding='utf-8', errors='replace') as f:
                for line in f:
                    yield line.rstrip('\n')
        except OSError as e:
            raise CorpusReadError(f"No se pudo leer el corpus '{path}': {e}") from e
    else:
        for line in corpus:
            yield line


def _chunks(lines: Iterator[str], size: int) -> Iterator[List[str]]:
    while True:
        chunk = list(itertools.islice(lines, size))
        if not chunk:
            return
        yield chunk


def retrieval_count(corpus: Union[str, Path, Iterable[str]], keywords: Iterable[str],
                    workers: int = 1, chunk_size: int = 10000) -> int:
    """
    Número de documentos (líneas) que contienen alguna keyword como token

    La comparación es por token completo y sin distinguir mayúsculas; cada
    documento cuenta una vez. El corpus se lee en bloques y, con workers > 1,
    los bloques se cuentan en paralelo; la suma es idéntica a la secuencial.

    Args:
        corpus: Ruta de un archivo UTF-8 o iterable de documentos
        keywords: Keywords a buscar (no vacío)
        workers: Hilos de conteo
        chunk_size: Documentos por bloque

    Raises:
        CorpusReadError: Si el corpus no se puede leer
    """
    keywords = list(keywords)
    if not keywords:
        raise ValueError("El conjunto de keywords no puede estar vacío")
    if chunk_size < 1:
        raise ValueError(f"chunk_size debe ser positivo, recibido: {chunk_size}")

    singles, phrases = _compile_keywords(keywords)
    chunks = _chunks(_iter_corpus(corpus), chunk_size)

    total = 0
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pending = deque()
            for chunk in chunks:
                pending.append(pool.submit(_count_chunk, chunk, singles, phrases))
                if len(pending) >= workers * 2:
                    total += pending.popleft().result()
            while pending:
                total += pending.popleft().result()
    else:
        for chunk in chunks:
            total += _count_chunk(chunk, singles, phrases)

    logger.info(f"Documentos recuperados con {len(keywords)} keywords: {total}")
    return total


def retrieval_gain(base_count: int, expanded_count: int) -> float:
    """
    Aumento relativo de documentos recuperados: (expandido - base) / base

    Raises:
        UndefinedGainError: Si base_count no es positivo
    """
    if base_count <= 0:
        raise UndefinedGainError(f"Ganancia indefinida con recuento base {base_count}")
    return (expanded_count - base_count) / base_count

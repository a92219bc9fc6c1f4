"""
Subcomandos de la línea de comandos
Cada cmd_* recibe su configuración, escribe su salida y devuelve el código de salida
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from spellforge.cli.run_config import RunConfig, validate_run_config
from spellforge.models.edit_costs import RATIO_COSTS, SEARCH_COSTS
from spellforge.models.variant_set import GenerationConfig
from spellforge.models.vector_model import VectorModel, load_model
from spellforge.utils import settings
from spellforge.utils.data_manager import DataManager
from spellforge.utils.errors import UsageError
from spellforge.utils.evaluate import (best_rows, distance_histogram, expand_keywords,
                                       fuzzy_candidates, gold_statistics, retrieval_count,
                                       retrieval_gain, score, split_gold, threshold_sweep)
from spellforge.utils.generator import generate_batch
from spellforge.utils.weights import (class_balance, estimate_distributions, label_candidates,
                                      learn_profile)

logger = logging.getLogger(__name__)

EXIT = settings.EXIT_CODES


# ============================================================
# Utilidades comunes
# ============================================================

def _require_file(path: Optional[str], label: str, flag: str) -> str:
    if not path:
        raise UsageError(f"Falta {flag} ({label})", EXIT['usage'])
    if not Path(path).is_file():
        raise UsageError(f"No existe el {label}: {path}", EXIT['missing_file'])
    return path


def _check_output(path: Optional[str]) -> None:
    if path and not Path(path).resolve().parent.is_dir():
        raise UsageError(f"No existe el directorio de salida: {path}", EXIT['missing_file'])


def _check_range(value: float, low: float, high: float, flag: str, low_open: bool = False) -> None:
    below = value <= low if low_open else value < low
    if below or value > high:
        interval = f"({low}, {high}]" if low_open else f"[{low}, {high}]"
        raise UsageError(f"{flag} debe estar en {interval}, recibido: {value}", EXIT['invalid_range'])


def _betas(args: argparse.Namespace) -> List[float]:
    betas = list(args.beta or settings.DEFAULTS['betas'])
    for beta in betas:
        if beta <= 0:
            raise UsageError(f"--beta debe ser positivo, recibido: {beta}", EXIT['invalid_range'])
    return betas


def _seeds(args: argparse.Namespace, data_manager: DataManager) -> List[str]:
    seeds = list(args.seed or [])
    if getattr(args, 'seeds_file', None):
        seeds.extend(data_manager.load_seeds(_require_file(args.seeds_file, 'archivo de semillas',
                                                           '--seeds-file')))
    return seeds


def _model_path(args: argparse.Namespace) -> Optional[str]:
    return args.model or settings.get_default_model_path()


def _load(path: str, format: Optional[str]) -> VectorModel:
    return load_model(path, format or settings.infer_model_format(path))


def _model_info(model: VectorModel) -> Dict:
    return {'digest': model.digest, 'size': len(model), 'dim': model.dim}


def _generation_config(config: RunConfig, data_manager: DataManager) -> GenerationConfig:
    profile = data_manager.load_profile(config.profile_path) if config.profile_path else None
    return GenerationConfig(
        ssl=config.ssl,
        lt=config.lt,
        mode=config.mode,
        profile=profile,
        case_fold=config.case_fold,
        denominator=config.denominator,
    )


# ============================================================
# Subcomandos
# ============================================================

def cmd_generate(config: RunConfig) -> int:
    """
    Generar variantes para las semillas indicadas

    Las semillas fuera de vocabulario se listan en la salida sin abortar.
    Con la tabla plana en stdout se informan en stderr como una línea JSON.
    """
    validate_run_config(config)
    data_manager = DataManager()

    seeds = list(config.seeds)
    if config.seeds_file:
        seeds.extend(data_manager.load_seeds(config.seeds_file))
    generation = _generation_config(config, data_manager)

    model = _load(config.model_path, config.format)
    batch = generate_batch(seeds, model, generation, workers=config.workers)
    model_info = _model_info(model)

    if config.output_path is None:
        data_manager.write_output(data_manager.render_variants(batch, config.output_format, model_info), None)
        # La tabla plana no tiene campo para las semillas omitidas
        if config.output_format == 'flat' and batch.skipped:
            print(json.dumps({'skipped': batch.skipped}, ensure_ascii=False), file=sys.stderr)
        return EXIT['ok']

    data_manager.save_variants(batch, config.output_path, config.output_format, model_info)
    summary = {
        'output': config.output_path,
        'seeds': len(batch.results),
        'variants': sum(len(v) for v in batch.results.values()),
        'skipped': batch.skipped,
    }
    print(json.dumps(summary, ensure_ascii=False))
    return EXIT['ok']


def cmd_learn_weights(args: argparse.Namespace) -> int:
    """Aprender un perfil de pesos desde pares etiquetados"""
    pairs_path = _require_file(args.pairs, 'archivo de pares etiquetados', '--pairs')
    _check_range(args.scale, 0.0, 1.0, '--scale', low_open=True)
    _check_range(args.bucket_width, 0.0, 1.0, '--bucket-width', low_open=True)
    if args.window is not None and args.window < 1:
        raise UsageError(f"--window debe ser positivo, recibido: {args.window}", EXIT['invalid_range'])
    _check_output(args.out)
    _check_output(args.distributions)

    data_manager = DataManager()
    pairs = data_manager.load_labeled_pairs(pairs_path)
    logger.info(f"Clases: {class_balance(pairs)}")

    costs = SEARCH_COSTS if args.substitution_cost == 1 else RATIO_COSTS
    distributions = estimate_distributions(pairs, args.window, args.bucket_width, costs)
    if args.distributions:
        data_manager.save_distributions(distributions, args.distributions)

    profile = learn_profile(distributions, args.scale, args.window, args.bucket_width)
    if args.out:
        data_manager.save_profile(profile, args.out)
    else:
        data_manager.write_output(profile.to_text(), None)
    return EXIT['ok']


def cmd_evaluate(args: argparse.Namespace) -> int:
    """Evaluar predicciones frente a un gold standard"""
    predictions_path = _require_file(args.predictions, 'archivo de predicciones', '--predictions')
    gold_path = _require_file(args.gold, 'gold standard', '--gold')
    betas = _betas(args)
    _check_output(args.out)

    data_manager = DataManager()
    report = score(data_manager.load_predictions(predictions_path), data_manager.load_gold(gold_path), betas)
    data_manager.write_output(data_manager.render_report(report), args.out)
    return EXIT['ok']


def cmd_sweep(args: argparse.Namespace) -> int:
    """Barrido de umbrales lt en uno o ambos modos"""
    config = RunConfig.from_args(args)
    if args.modes in ('weighted', 'both'):
        config.mode = 'weighted'
    validate_run_config(config)
    gold_path = _require_file(args.gold, 'gold standard', '--gold')
    betas = _betas(args)
    lt_values = list(args.lt_values or settings.default_sweep_grid())
    for lt in lt_values:
        _check_range(lt, 0.0, 1.0, '--lt-values')

    data_manager = DataManager()
    gold = data_manager.load_gold(gold_path)
    seeds = _seeds(args, data_manager)
    generation = _generation_config(config, data_manager)

    if args.modes == 'both':
        modes: Sequence[str] = ('default', 'weighted')
    elif args.modes is None:
        modes = ('default', 'weighted') if generation.profile is not None else ('default',)
    else:
        modes = (args.modes,)

    model = _load(config.model_path, config.format)
    rows = threshold_sweep(seeds, model, generation, gold, lt_values, betas, modes, workers=config.workers)

    for mode, row in best_rows(rows, betas[0]).items():
        logger.info(f"Mejor {mode} según F_{betas[0]:g}: lt={row.lt:.2f} ({row.report.f_scores[betas[0]]:.4f})")

    if args.out:
        data_manager.save_sweep(rows, betas, args.out)
    else:
        data_manager.write_output(data_manager.render_sweep(rows, betas), None)
    return EXIT['ok']


def _vocabulary(args: argparse.Namespace, data_manager: DataManager) -> List[str]:
    """Vocabulario desde --vocab o desde el modelo"""
    if args.vocab:
        return data_manager.load_vocabulary(_require_file(args.vocab, 'vocabulario', '--vocab'))
    model_path = _model_path(args)
    _require_file(model_path, 'modelo', '--model')
    return list(_load(model_path, args.format).vocab)


def cmd_candidates(args: argparse.Namespace) -> int:
    """Candidatos difusos para construir un gold standard"""
    data_manager = DataManager()
    keywords = _seeds(args, data_manager)
    if not keywords:
        raise UsageError("Indique al menos una keyword con --seed o --seeds-file", EXIT['usage'])
    _check_output(args.out)

    vocabulary = _vocabulary(args, data_manager)
    candidates = {keyword: fuzzy_candidates(keyword, vocabulary) for keyword in keywords}
    data_manager.write_output(data_manager.render_candidates(candidates), args.out)
    return EXIT['ok']


def cmd_label(args: argparse.Namespace) -> int:
    """Etiquetar candidatos difusos con el gold para aprender pesos"""
    gold_path = _require_file(args.gold, 'gold standard', '--gold')
    _check_output(args.out)

    data_manager = DataManager()
    gold = data_manager.load_gold(gold_path)
    keywords = _seeds(args, data_manager) or gold.keywords
    vocabulary = _vocabulary(args, data_manager)

    pairs = []
    for keyword in keywords:
        expected = gold[keyword] if keyword in gold else frozenset()
        pairs.extend(label_candidates(keyword, fuzzy_candidates(keyword, vocabulary), expected))
    logger.info(f"Pares etiquetados: {class_balance(pairs)}")

    data_manager.write_output(data_manager.render_labeled_pairs(pairs), args.out)
    return EXIT['ok']


def cmd_retrieval(args: argparse.Namespace) -> int:
    """Documentos recuperados con las semillas y con las semillas más sus variantes"""
    corpus_path = _require_file(args.corpus, 'corpus', '--corpus')
    variants_path = _require_file(args.variants, 'archivo de variantes', '--variants')
    if args.workers < 1:
        raise UsageError(f"--workers debe ser positivo, recibido: {args.workers}", EXIT['invalid_range'])
    _check_output(args.out)

    data_manager = DataManager()
    variant_sets = data_manager.load_variant_sets(variants_path)
    seeds = _seeds(args, data_manager) or [variant_set.seed for variant_set in variant_sets]
    expanded = expand_keywords(seeds, variant_sets)

    base_count = retrieval_count(corpus_path, seeds, workers=args.workers)
    expanded_count = retrieval_count(corpus_path, expanded, workers=args.workers)
    report = {
        'keywords': len(set(seeds)),
        'expanded_keywords': len(expanded),
        'base_count': base_count,
        'expanded_count': expanded_count,
        'gain': retrieval_gain(base_count, expanded_count),
    }
    data_manager.write_output(json.dumps(report, indent=2, ensure_ascii=False) + '\n', args.out)
    return EXIT['ok']


def cmd_stats(args: argparse.Namespace) -> int:
    """Estadísticas del gold standard: misspellings por keyword y por distancia"""
    gold_path = _require_file(args.gold, 'gold standard', '--gold')
    _check_output(args.out)

    data_manager = DataManager()
    gold = data_manager.load_gold(gold_path)
    report = gold_statistics(gold)
    report['distance_histogram'] = {str(d): n for d, n in distance_histogram(gold).items()}
    data_manager.write_output(json.dumps(report, indent=2, ensure_ascii=False) + '\n', args.out)
    return EXIT['ok']


def cmd_split(args: argparse.Namespace) -> int:
    """Dividir el gold standard en keywords de desarrollo y de evaluación"""
    gold_path = _require_file(args.gold, 'gold standard', '--gold')
    _check_range(args.test_size, 0.0, 1.0, '--test-size', low_open=True)
    if args.test_size >= 1:
        raise UsageError("--test-size debe ser menor que 1", EXIT['invalid_range'])
    _check_output(args.train_out)
    _check_output(args.test_out)

    data_manager = DataManager()
    train, test = split_gold(data_manager.load_gold(gold_path), args.test_size, args.split_seed)
    data_manager.save_gold(train, args.train_out)
    data_manager.save_gold(test, args.test_out)
    print(json.dumps({'train': train.keywords, 'test': test.keywords}, ensure_ascii=False))
    return EXIT['ok']

"""
Punto de entrada de la línea de comandos de SpellForge
Construye el parser, configura el logging y traduce las excepciones a códigos de salida
"""

import argparse
import json
import logging
import sys
from typing import Callable, Dict, List, Optional

from spellforge import __version__
from spellforge.cli import commands
from spellforge.cli.run_config import RunConfig
from spellforge.utils import settings
from spellforge.utils.errors import (BatchError, ConfigurationError, CorpusReadError,
                                     DataFormatError, EvaluationError, LearningError,
                                     ModelLoadError, OutOfVocabularyError, ProfileError,
                                     ThresholdError, UndefinedGainError, UsageError)

logger = logging.getLogger(__name__)

EXIT = settings.EXIT_CODES
DEFAULTS = settings.DEFAULTS

# Excepción -> código de salida (se usa la primera clase que coincide)
ERROR_EXIT_CODES = (
    (ModelLoadError, EXIT['model_load']),
    (ProfileError, EXIT['learning']),
    (LearningError, EXIT['learning']),
    (OutOfVocabularyError, EXIT['vocabulary']),
    (BatchError, EXIT['vocabulary']),
    (EvaluationError, EXIT['evaluation']),
    (DataFormatError, EXIT['evaluation']),
    (UndefinedGainError, EXIT['evaluation']),
    (ThresholdError, EXIT['evaluation']),
    (ConfigurationError, EXIT['usage']),
    (CorpusReadError, EXIT['missing_file']),
    (FileNotFoundError, EXIT['missing_file']),
)


class _ArgumentParser(argparse.ArgumentParser):
    """Parser que lanza UsageError en lugar de terminar el proceso"""

    def error(self, message: str):
        raise UsageError(message, EXIT['usage'])


def _add_common(parser: argparse.ArgumentParser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--verbose', '-v', action='store_true', help='Mostrar mensajes de depuración')
    group.add_argument('--quiet', '-q', action='store_true', help='Mostrar solo avisos y errores')
    parser.add_argument('--workers', type=int, default=DEFAULTS['workers'],
                        help='Hilos para lotes de semillas y conteo en el corpus')


def _add_model(parser: argparse.ArgumentParser):
    parser.add_argument('--model', help=f"Modelo word2vec (por defecto ${settings.MODEL_ENV_VAR})")
    parser.add_argument('--format', choices=settings.FILE_FORMATS['model'],
                        help='Formato del modelo (por defecto según la extensión)')


def _add_seeds(parser: argparse.ArgumentParser):
    parser.add_argument('--seed', action='append', help='Semilla (repetible)')
    parser.add_argument('--seeds-file', help='Archivo con una semilla por línea')


def _add_generation(parser: argparse.ArgumentParser):
    parser.add_argument('--lt', type=float, default=DEFAULTS['lt'], help='Umbral del ratio de Levenshtein')
    parser.add_argument('--ssl', type=int, default=DEFAULTS['ssl'], help='Vecinos semánticos por término')
    parser.add_argument('--mode', choices=('default', 'weighted'), default=DEFAULTS['mode'])
    parser.add_argument('--profile', help='Perfil de pesos posicionales (modo weighted)')
    parser.add_argument('--denominator', choices=('length_sum', 'max_length'),
                        default=DEFAULTS['denominator'], help='Denominador del ratio')
    parser.add_argument('--no-case-fold', action='store_true', help='No pasar las semillas a minúsculas')


def _add_betas(parser: argparse.ArgumentParser):
    parser.add_argument('--beta', type=float, action='append', help='Valor de beta para F_beta (repetible)')


def build_parser() -> argparse.ArgumentParser:
    """
    Construir el parser con todos los subcomandos

    Returns:
        Parser de argparse
    """
    parser = _ArgumentParser(
        prog='spellforge',
        description='Generación de variantes ortográficas con vectores de palabras y distancia de edición',
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='COMANDO')

    generate = subparsers.add_parser('generate', help='Generar variantes para una o más semillas')
    _add_common(generate)
    _add_model(generate)
    _add_seeds(generate)
    _add_generation(generate)
    generate.add_argument('--out', help='Archivo de salida (por defecto stdout)')
    generate.add_argument('--out-format', choices=settings.FILE_FORMATS['output'], default='structured')

    learn = subparsers.add_parser('learn-weights', help='Aprender un perfil de pesos desde pares etiquetados')
    _add_common(learn)
    learn.add_argument('--pairs', required=True, help='TSV keyword, candidato, etiqueta')
    learn.add_argument('--window', type=int, help='Tamaño de ventana (por defecto automático por keyword)')
    learn.add_argument('--bucket-width', type=float, default=DEFAULTS['bucket_width'])
    learn.add_argument('--scale', type=float, default=DEFAULTS['scale'], help='k: recompensa/penalización máxima')
    learn.add_argument('--substitution-cost', type=int, choices=(1, 2), default=2)
    learn.add_argument('--distributions', help='Guardar las distribuciones por bucket en JSON')
    learn.add_argument('--out', help='Archivo del perfil (por defecto stdout)')

    evaluate = subparsers.add_parser('evaluate', help='Evaluar predicciones frente a un gold standard')
    _add_common(evaluate)
    evaluate.add_argument('--predictions', required=True, help='Salida de generate (JSON o TSV)')
    evaluate.add_argument('--gold', required=True)
    _add_betas(evaluate)
    evaluate.add_argument('--out')

    sweep = subparsers.add_parser('sweep', help='Barrido de umbrales lt')
    _add_common(sweep)
    _add_model(sweep)
    _add_seeds(sweep)
    _add_generation(sweep)
    sweep.add_argument('--gold', required=True)
    sweep.add_argument('--lt-values', type=float, nargs='+', help='Umbrales (por defecto 0.55..0.95)')
    sweep.add_argument('--modes', choices=('default', 'weighted', 'both'),
                       help='Modos a barrer (por defecto ambos si hay perfil)')
    _add_betas(sweep)
    sweep.add_argument('--out')

    candidates = subparsers.add_parser('candidates', help='Candidatos difusos para construir un gold standard')
    _add_common(candidates)
    _add_model(candidates)
    _add_seeds(candidates)
    candidates.add_argument('--vocab', help='Vocabulario (un token por línea) en lugar del modelo')
    candidates.add_argument('--out')

    label = subparsers.add_parser('label', help='Etiquetar candidatos difusos con el gold standard')
    _add_common(label)
    _add_model(label)
    _add_seeds(label)
    label.add_argument('--vocab')
    label.add_argument('--gold', required=True)
    label.add_argument('--out')

    retrieval = subparsers.add_parser('retrieval', help='Ganancia de recuperación con variantes')
    _add_common(retrieval)
    _add_seeds(retrieval)
    retrieval.add_argument('--corpus', required=True, help='Corpus UTF-8, un documento por línea')
    retrieval.add_argument('--variants', required=True, help='Salida de generate (JSON o TSV)')
    retrieval.add_argument('--out')

    stats = subparsers.add_parser('stats', help='Estadísticas del gold standard')
    _add_common(stats)
    stats.add_argument('--gold', required=True)
    stats.add_argument('--out')

    split = subparsers.add_parser('split', help='Dividir el gold standard por keywords')
    _add_common(split)
    split.add_argument('--gold', required=True)
    split.add_argument('--test-size', type=float, default=DEFAULTS['test_size'])
    split.add_argument('--split-seed', type=int, default=DEFAULTS['split_seed'])
    split.add_argument('--train-out', required=True)
    split.add_argument('--test-out', required=True)

    return parser


def configure_logging(verbose: bool = False, quiet: bool = False):
    """Configurar el logging en stderr según --verbose / --quiet"""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
        force=True,
    )


def _exit_code_for(error: BaseException) -> int:
    if isinstance(error, UsageError):
        return error.exit_code
    for error_type, code in ERROR_EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return EXIT['unexpected']


def report_error(error: BaseException, exit_code: int):
    """Informe de error legible por máquina en stderr"""
    report = {
        'error': type(error).__name__,
        'message': str(error),
        'exit_code': exit_code,
    }
    for attribute in ('line', 'token', 'path', 'skipped', 'unknown'):
        value = getattr(error, attribute, None)
        if value:
            report[attribute] = value
    print(json.dumps(report, ensure_ascii=False), file=sys.stderr)


def _dispatch(args: argparse.Namespace) -> int:
    handlers: Dict[str, Callable[[argparse.Namespace], int]] = {
        'learn-weights': commands.cmd_learn_weights,
        'evaluate': commands.cmd_evaluate,
        'sweep': commands.cmd_sweep,
        'candidates': commands.cmd_candidates,
        'label': commands.cmd_label,
        'retrieval': commands.cmd_retrieval,
        'stats': commands.cmd_stats,
        'split': commands.cmd_split,
    }
    if args.command == 'generate':
        return commands.cmd_generate(RunConfig.from_args(args))
    return handlers[args.command](args)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Ejecutar la línea de comandos

    Args:
        argv: Argumentos (por defecto sys.argv[1:])

    Returns:
        Código de salida
    """
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        report_error(e, e.exit_code)
        return e.exit_code

    configure_logging(args.verbose, args.quiet)
    logger.debug(f"Argumentos: {vars(args)}")

    try:
        return _dispatch(args)
    except KeyboardInterrupt:
        logger.warning("Interrumpido por el usuario")
        return EXIT['unexpected']
    except Exception as e:
        exit_code = _exit_code_for(e)
        if exit_code == EXIT['unexpected']:
            logger.exception(f"Error inesperado: {e}")
        else:
            logger.debug(f"{type(e).__name__}: {e}")
        report_error(e, exit_code)
        return exit_code

"""
Configuración de una ejecución de generación desde la línea de comandos
"""

import argparse
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from spellforge.models.variant_set import MODES
from spellforge.utils import settings
from spellforge.utils.errors import UsageError


@dataclass
class RunConfig:
    """Parámetros de una ejecución de generate (y de sweep)"""
    model_path: Optional[str]
    format: Optional[str] = None
    seeds: List[str] = field(default_factory=list)
    seeds_file: Optional[str] = None
    lt: float = settings.DEFAULTS['lt']
    ssl: int = settings.DEFAULTS['ssl']
    mode: str = settings.DEFAULTS['mode']
    profile_path: Optional[str] = None
    output_path: Optional[str] = None
    output_format: str = 'structured'
    case_fold: bool = True
    denominator: str = settings.DEFAULTS['denominator']
    workers: int = settings.DEFAULTS['workers']

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        """Construir desde los argumentos ya parseados"""
        return cls(
            model_path=args.model or settings.get_default_model_path(),
            format=args.format,
            seeds=list(args.seed or []),
            seeds_file=args.seeds_file,
            lt=args.lt,
            ssl=args.ssl,
            mode=args.mode,
            profile_path=args.profile,
            output_path=getattr(args, 'out', None),
            output_format=getattr(args, 'out_format', 'structured'),
            case_fold=not args.no_case_fold,
            denominator=args.denominator,
            workers=args.workers,
        )

    @property
    def model_format(self) -> str:
        return self.format or settings.infer_model_format(self.model_path or '')


def check_run_config(config: RunConfig) -> Tuple[bool, str, int]:
    """
    Validar una configuración antes de cargar el modelo

    Returns:
        Tupla (es_válida, mensaje_error, código_de_salida)
    """
    codes = settings.EXIT_CODES

    if not 0 <= config.lt <= 1:
        return False, f"--lt debe estar en [0, 1], recibido: {config.lt}", codes['invalid_range']
    if config.ssl < 1:
        return False, f"--ssl debe ser positivo, recibido: {config.ssl}", codes['invalid_range']
    if config.workers < 1:
        return False, f"--workers debe ser positivo, recibido: {config.workers}", codes['invalid_range']

    if config.mode not in MODES:
        return False, f"Modo inválido: {config.mode}", codes['usage']
    if config.mode == 'weighted' and not config.profile_path:
        return False, "--mode weighted requiere --profile", codes['usage']
    if config.output_format not in settings.FILE_FORMATS['output']:
        return False, f"Formato de salida inválido: {config.output_format}", codes['usage']
    if not config.seeds and not config.seeds_file:
        return False, "Indique al menos una semilla con --seed o --seeds-file", codes['usage']
    if not config.model_path:
        return False, f"Indique el modelo con --model o la variable {settings.MODEL_ENV_VAR}", codes['usage']

    for label, path in (('modelo', config.model_path), ('perfil', config.profile_path),
                        ('archivo de semillas', config.seeds_file)):
        if path and not Path(path).is_file():
            return False, f"No existe el {label}: {path}", codes['missing_file']

    if config.output_path and not Path(config.output_path).resolve().parent.is_dir():
        return False, f"No existe el directorio de salida: {config.output_path}", codes['missing_file']

    return True, "Configuración válida", codes['ok']


def validate_run_config(config: RunConfig) -> None:
    """
    Validar la configuración y lanzar UsageError con su código de salida

    Raises:
        UsageError: Si la configuración no es válida
    """
    ok, message, exit_code = check_run_config(config)
    if not ok:
        raise UsageError(message, exit_code)

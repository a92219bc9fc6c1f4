"""
Configuración de generación y conjuntos de variantes resultantes
"""

import dataclasses
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from spellforge.models.edit_costs import RatioDenominator
from spellforge.models.weight_profile import WeightProfile
from spellforge.utils.errors import ConfigurationError

MODES = ('default', 'weighted')


@dataclass(frozen=True)
class GenerationConfig:
    """
    Parámetros de la generación independientes de la semilla

    Attributes:
        ssl: Vecinos semánticos por término expandido
        lt: Umbral del ratio de Levenshtein en [0, 1]
        mode: 'default' (ratio simple) o 'weighted' (ratio ponderado)
        profile: Perfil de pesos, obligatorio en modo weighted
        case_fold: Pasar la semilla a minúsculas antes de buscarla
        denominator: Convención del ratio de Levenshtein
    """
    ssl: int = 4000
    lt: float = 0.75
    mode: str = 'default'
    profile: Optional[WeightProfile] = None
    case_fold: bool = True
    denominator: RatioDenominator = RatioDenominator.LENGTH_SUM

    def __post_init__(self):
        if isinstance(self.ssl, bool) or not isinstance(self.ssl, int) or self.ssl < 1:
            raise ConfigurationError(f"ssl debe ser un entero positivo, recibido: {self.ssl!r}")
        if isinstance(self.lt, bool) or not isinstance(self.lt, (int, float)) or not 0 <= self.lt <= 1:
            raise ConfigurationError(f"lt debe estar en [0, 1], recibido: {self.lt!r}")
        if self.mode not in MODES:
            raise ConfigurationError(f"Modo inválido: {self.mode}. Debe ser uno de {MODES}")
        if self.mode == 'weighted' and self.profile is None:
            raise ConfigurationError("El modo weighted requiere un perfil de pesos")
        try:
            object.__setattr__(self, 'denominator', RatioDenominator(self.denominator))
        except ValueError:
            raise ConfigurationError(f"Denominador inválido: {self.denominator}") from None

    def replace(self, **changes) -> 'GenerationConfig':
        """Copia con los campos indicados cambiados"""
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict:
        """Eco de configuración para las salidas estructuradas"""
        return {
            'ssl': self.ssl,
            'lt': self.lt,
            'mode': self.mode,
            'profile_digest': self.profile.digest if self.profile is not None else None,
            'case_fold': self.case_fold,
            'denominator': self.denominator.value,
        }


@dataclass(frozen=True)
class Variant:
    """Variante aceptada con su ratio frente a la semilla y su coseno"""
    token: str
    ratio: float
    cosine: float

    def to_dict(self) -> Dict:
        return {'token': self.token, 'ratio': self.ratio, 'cosine': self.cosine}


@dataclass(frozen=True)
class VariantSet:
    """
    Semilla y sus variantes, ordenadas por ratio descendente y token ascendente
    """
    seed: str
    variants: Tuple[Variant, ...]
    config: Optional[GenerationConfig] = None

    @classmethod
    def build(cls, seed: str, variants: Iterable[Variant],
              config: Optional[GenerationConfig] = None) -> 'VariantSet':
        unique: Dict[str, Variant] = {}
        for variant in variants:
            if variant.token != seed:
                unique.setdefault(variant.token, variant)
        ordered = sorted(unique.values(), key=lambda v: (-v.ratio, v.token))
        return cls(seed=seed, variants=tuple(ordered), config=config)

    @property
    def tokens(self) -> List[str]:
        return [variant.token for variant in self.variants]

    def __len__(self) -> int:
        return len(self.variants)

    def __contains__(self, token: object) -> bool:
        return any(variant.token == token for variant in self.variants)

    def to_dict(self) -> Dict:
        return {
            'seed': self.seed,
            'config': self.config.to_dict() if self.config is not None else None,
            'variants': [variant.to_dict() for variant in self.variants],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'VariantSet':
        variants = [Variant(item['token'], float(item['ratio']), float(item['cosine']))
                    for item in data.get('variants', [])]
        return cls.build(data['seed'], variants)


@dataclass
class BatchResult:
    """Resultados de un lote de semillas y las semillas fuera de vocabulario"""
    results: Dict[str, VariantSet] = field(default_factory=dict)
    skipped: List[str] = field(default_factory=list)

    def predictions(self) -> Dict[str, set]:
        """Mapa semilla -> conjunto de variantes, para la evaluación"""
        return {seed: set(variant_set.tokens) for seed, variant_set in self.results.items()}

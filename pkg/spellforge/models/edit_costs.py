"""
Costes de edición y convenciones del ratio de Levenshtein
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

logger = logging.getLogger(__name__)


class RatioDenominator(str, Enum):
    """Denominador del ratio de Levenshtein"""
    # 1 - ldist / (len(a) + len(b)): klonipin y klonodine superan lt=0.75
    LENGTH_SUM = 'length_sum'
    # 1 - ldist / max(len(a), len(b)): fórmula literal, acotada a 0
    MAX_LENGTH = 'max_length'


@dataclass(frozen=True)
class EditCosts:
    """
    Costes de inserción, borrado y sustitución

    Con sustitución > inserción + borrado la sustitución nunca se usa y la
    distancia se reduce a la de inserciones/borrados; se permite, pero se
    avisa en el log.
    """
    insertion: int = 1
    deletion: int = 1
    substitution: int = 1

    def __post_init__(self):
        for name in ('insertion', 'deletion', 'substitution'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"El coste de {name} debe ser un entero, recibido: {type(value)}")
            if value < 0:
                raise ValueError(f"El coste de {name} no puede ser negativo: {value}")
        if self.collapses_to_indel:
            logger.warning(
                f"Sustitución ({self.substitution}) mayor que inserción + borrado "
                f"({self.insertion + self.deletion}): la sustitución nunca se usará"
            )

    @property
    def collapses_to_indel(self) -> bool:
        return self.substitution > self.insertion + self.deletion

    def as_weights(self) -> Tuple[int, int, int]:
        """Tupla (inserción, borrado, sustitución) en el orden de Levenshtein.distance"""
        return (self.insertion, self.deletion, self.substitution)

    def to_dict(self) -> Dict[str, int]:
        return {
            'insertion': self.insertion,
            'deletion': self.deletion,
            'substitution': self.substitution,
        }


# Convención del ratio: la sustitución cuenta como dos ediciones
RATIO_COSTS = EditCosts(insertion=1, deletion=1, substitution=2)

# Búsqueda de candidatos: distancia de Levenshtein clásica
SEARCH_COSTS = EditCosts(insertion=1, deletion=1, substitution=1)

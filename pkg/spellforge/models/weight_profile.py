"""
Perfil de pesos por posición relativa y datos de entrenamiento asociados
Incluye los pares etiquetados y las distribuciones de distancias por bucket
"""

import hashlib
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from spellforge.utils.errors import ProfileError

# Identificador del formato de texto del perfil
PROFILE_FORMAT = 'spellforge-weight-profile/1'

# Peso mínimo: con k = 1 el bucket más penalizado quedaría en 0
MIN_WEIGHT = 1e-6

# Tolerancia al comprobar la banda [1 - k, 1 + k]
BAND_TOLERANCE = 1e-9


def bucket_count(bucket_width: float) -> int:
    """
    Número de buckets que cubren las posiciones relativas [0, 1]

    Args:
        bucket_width: Ancho de bucket en (0, 1]

    Returns:
        ceil(1 / bucket_width)
    """
    if not 0 < bucket_width <= 1:
        raise ValueError(f"El ancho de bucket debe estar en (0, 1], recibido: {bucket_width}")
    return max(1, math.ceil(1.0 / bucket_width - 1e-9))


def validate_profile_data(weights: Sequence[float], bucket_width: float,
                          window: Optional[int], scale: float) -> Tuple[bool, str]:
    """
    Validar los datos de un perfil antes de crear la instancia

    Returns:
        Tupla (es_válido, mensaje_error)
    """
    if not isinstance(bucket_width, (int, float)) or not 0 < bucket_width <= 1:
        return False, f"El ancho de bucket debe estar en (0, 1], recibido: {bucket_width}"

    if not isinstance(scale, (int, float)) or not 0 <= scale <= 1:
        return False, f"La escala k debe estar en [0, 1], recibido: {scale}"

    if window is not None:
        if isinstance(window, bool) or not isinstance(window, int) or window < 1:
            return False, f"La ventana debe ser un entero positivo, recibido: {window!r}"

    expected = bucket_count(bucket_width)
    if len(weights) != expected:
        return False, f"Se esperaban {expected} pesos para buckets de {bucket_width}, recibidos {len(weights)}"

    for i, weight in enumerate(weights):
        if not isinstance(weight, (int, float)) or not math.isfinite(weight):
            return False, f"Peso no numérico en el bucket {i}: {weight!r}"
        if weight <= 0:
            return False, f"Los pesos deben ser positivos (bucket {i}: {weight})"
        if weight < 1 - scale - BAND_TOLERANCE or weight > 1 + scale + BAND_TOLERANCE:
            return False, f"El peso del bucket {i} ({weight}) está fuera de [1 - k, 1 + k] con k={scale}"

    return True, "Datos válidos"


@dataclass(frozen=True)
class WeightProfile:
    """
    Pesos aprendidos por bucket de posición relativa

    `window` None significa ventana automática: max(3, len(keyword) // 2).
    """
    weights: Tuple[float, ...]
    bucket_width: float = 0.2
    window: Optional[int] = None
    scale: float = 0.05

    def __post_init__(self):
        try:
            object.__setattr__(self, 'weights', tuple(float(w) for w in self.weights))
        except (TypeError, ValueError) as e:
            raise ProfileError(f"Pesos no numéricos: {e}") from e
        ok, message = validate_profile_data(self.weights, self.bucket_width, self.window, self.scale)
        if not ok:
            raise ProfileError(message)

    @classmethod
    def uniform(cls, bucket_width: float = 0.2, window: Optional[int] = None,
                scale: float = 0.05) -> 'WeightProfile':
        """Perfil con todos los pesos a 1 (equivale a la media simple de ventanas)"""
        return cls(weights=(1.0,) * bucket_count(bucket_width), bucket_width=bucket_width,
                   window=window, scale=scale)

    @property
    def bucket_count(self) -> int:
        return len(self.weights)

    def weight_for(self, bucket: int) -> float:
        return self.weights[bucket]

    def to_dict(self) -> Dict:
        return {
            'bucket_width': self.bucket_width,
            'window': self.window,
            'scale': self.scale,
            'weights': list(self.weights),
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'WeightProfile':
        try:
            return cls(
                weights=tuple(data['weights']),
                bucket_width=data.get('bucket_width', 0.2),
                window=data.get('window'),
                scale=data.get('scale', 0.05),
            )
        except (KeyError, TypeError) as e:
            raise ProfileError(f"Perfil incompleto: {e}") from e

    def to_text(self) -> str:
        """
        Serializar en el documento clave-valor estable del perfil

        Returns:
            Texto con los campos format, bucket_width, window, scale y weights
        """
        window = 'auto' if self.window is None else str(self.window)
        weights = ' '.join(repr(w) for w in self.weights)
        return (
            "# SpellForge weight profile\n"
            f"format = {PROFILE_FORMAT}\n"
            f"bucket_width = {self.bucket_width!r}\n"
            f"window = {window}\n"
            f"scale = {self.scale!r}\n"
            f"weights = {weights}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> 'WeightProfile':
        """
        Leer un perfil desde su documento clave-valor

        Raises:
            ProfileError: Si falta algún campo o un valor no es válido
        """
        fields: Dict[str, str] = {}
        for line_number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            if '=' not in line:
                raise ProfileError(f"Línea {line_number} sin '=': {raw!r}")
            key, value = (part.strip() for part in line.split('=', 1))
            fields[key] = value

        declared = fields.get('format', PROFILE_FORMAT)
        if declared != PROFILE_FORMAT:
            raise ProfileError(f"Formato de perfil no soportado: {declared}")

        missing = [name for name in ('bucket_width', 'window', 'scale', 'weights') if name not in fields]
        if missing:
            raise ProfileError(f"Faltan campos en el perfil: {', '.join(missing)}")

        try:
            window_field = fields['window']
            window = None if window_field == 'auto' else int(window_field)
            return cls(
                weights=tuple(float(w) for w in fields['weights'].split()),
                bucket_width=float(fields['bucket_width']),
                window=window,
                scale=float(fields['scale']),
            )
        except ValueError as e:
            if isinstance(e, ProfileError):
                raise
            raise ProfileError(f"Valor inválido en el perfil: {e}") from e

    @property
    def digest(self) -> str:
        """Huella corta del perfil para el eco de configuración"""
        return hashlib.sha256(self.to_text().encode('utf-8')).hexdigest()[:16]


@dataclass(frozen=True)
class LabeledPair:
    """Par (keyword, candidato) etiquetado como misspelling verdadero o no"""
    keyword: str
    candidate: str
    is_misspelling: bool

    def __post_init__(self):
        if not self.keyword or not self.candidate:
            raise ValueError("La keyword y el candidato no pueden estar vacíos")
        if self.keyword == self.candidate:
            raise ValueError(f"El candidato no puede ser la propia keyword: {self.keyword}")


@dataclass
class PositionDistributions:
    """
    Distancias de edición medias por bucket de posición relativa

    tpldist para los misspellings verdaderos y fpldist para los falsos
    positivos; los recuentos permiten detectar buckets vacíos.
    """
    bucket_width: float
    window: Optional[int]
    tpldist: List[float]
    fpldist: List[float]
    tp_counts: List[int]
    fp_counts: List[int]
    tp_pairs: int = 0
    fp_pairs: int = 0
    costs: Dict[str, int] = field(default_factory=dict)

    def ratios(self) -> List[Optional[float]]:
        """Cociente fpldist / tpldist por bucket (None donde no está definido)"""
        return [fp / tp if tp > 0 else None for fp, tp in zip(self.fpldist, self.tpldist)]

    def empty_buckets(self) -> List[int]:
        return [i for i, (tp, fp) in enumerate(zip(self.tp_counts, self.fp_counts)) if tp == 0 or fp == 0]

    def to_dict(self) -> Dict:
        return {
            'bucket_width': self.bucket_width,
            'window': self.window,
            'tpldist': list(self.tpldist),
            'fpldist': list(self.fpldist),
            'ratios': self.ratios(),
            'tp_counts': list(self.tp_counts),
            'fp_counts': list(self.fp_counts),
            'tp_pairs': self.tp_pairs,
            'fp_pairs': self.fp_pairs,
            'costs': dict(self.costs),
        }

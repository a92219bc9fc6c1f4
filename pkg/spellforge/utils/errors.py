"""
Jerarquía de errores de SpellForge

Cada error deriva de SpellForgeError y del tipo estándar más cercano, de modo
que el código que captura ValueError, LookupError u OSError sigue funcionando.
"""

from typing import Optional


class SpellForgeError(Exception):
    """Base de todos los errores de la aplicación"""


class ModelLoadError(SpellForgeError, ValueError):
    """Error al cargar un modelo de vectores (cabecera, dimensión, duplicados, norma cero)"""

    def __init__(self, message: str, line: Optional[int] = None, token: Optional[str] = None):
        self.line = line
        self.token = token
        location = []
        if line is not None:
            location.append(f"línea {line}")
        if token is not None:
            location.append(f"token '{token}'")
        if location:
            message = f"{message} ({', '.join(location)})"
        super().__init__(message)


class OutOfVocabularyError(SpellForgeError, LookupError):
    """Token ausente del vocabulario del modelo"""

    def __init__(self, token: str, hint: str = ""):
        self.token = token
        self.hint = hint
        message = f"Token fuera de vocabulario: '{token}'"
        if hint:
            message = f"{message}. {hint}"
        super().__init__(message)

    def __str__(self) -> str:
        # LookupError hereda el repr de KeyError en algunos contextos
        return self.args[0]


class UndefinedInputError(SpellForgeError, ValueError):
    """Ratio de Levenshtein indefinido (ambas cadenas vacías)"""


class ProfileError(SpellForgeError, ValueError):
    """Perfil de pesos inválido o ilegible"""


class LearningError(SpellForgeError, ValueError):
    """Los datos etiquetados no permiten aprender un perfil de pesos"""


class ConfigurationError(SpellForgeError, ValueError):
    """Configuración de generación inconsistente"""


class BatchError(SpellForgeError, ValueError):
    """Ninguna semilla de un lote pudo procesarse"""

    def __init__(self, message: str, skipped: Optional[list] = None):
        self.skipped = list(skipped or [])
        super().__init__(message)


class EvaluationError(SpellForgeError, ValueError):
    """Gold standard vacío o palabras clave desconocidas"""

    def __init__(self, message: str, unknown: Optional[list] = None):
        self.unknown = list(unknown or [])
        super().__init__(message)


class ThresholdError(SpellForgeError, ValueError):
    """Umbral de distancia no positivo para la búsqueda difusa"""


class UndefinedGainError(SpellForgeError, ValueError):
    """Ganancia de recuperación indefinida (recuento base cero)"""


class CorpusReadError(SpellForgeError, OSError):
    """No se pudo leer el corpus"""


class DataFormatError(SpellForgeError, ValueError):
    """Archivo de entrada con formato incorrecto"""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        if path is not None:
            message = f"{path}:{line}: {message}" if line is not None else f"{path}: {message}"
        super().__init__(message)


class UsageError(SpellForgeError):
    """Error de uso de la línea de comandos con su código de salida"""

    def __init__(self, message: str, exit_code: int = 2):
        self.exit_code = exit_code
        super().__init__(message)

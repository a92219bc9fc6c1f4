"""
Modelo de vectores densos (formato word2vec)
Carga el vocabulario y la matriz de embeddings normalizada por filas y
responde consultas de vecinos más cercanos por similitud coseno
"""

import hashlib
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from gensim.models import KeyedVectors

from spellforge.utils.errors import ModelLoadError, OutOfVocabularyError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


@dataclass(frozen=True)
class Neighbor:
    """Vecino semántico de un token y su similitud coseno"""
    token: str
    similarity: float

    def to_dict(self) -> Dict:
        return {'token': self.token, 'similarity': self.similarity}


class VectorModel:
    """
    Vocabulario inmutable más matriz de embeddings con filas de norma 1

    La similitud coseno se reduce a un producto escalar porque las filas se
    normalizan una sola vez al construir el modelo. El modelo no se modifica
    después de la carga y puede compartirse entre hilos lectores.
    """

    # Tolerancia de la norma tras la normalización
    NORM_TOLERANCE = 1e-6

    def __init__(self, vocab: Sequence[str], matrix, dtype=np.float32):
        """
        Inicializar el modelo

        Args:
            vocab: Tokens en orden de fila
            matrix: Matriz |vocab| x dim con los vectores originales
            dtype: Tipo de dato de almacenamiento (float32 como word2vec)

        Raises:
            ModelLoadError: Si la forma no coincide, hay tokens duplicados
                o algún vector tiene norma cero
        """
        vocab = list(vocab)
        array = np.asarray(matrix)
        if not np.issubdtype(array.dtype, np.floating):
            array = array.astype(np.float64)

        if array.ndim != 2:
            raise ModelLoadError(f"La matriz debe ser bidimensional, recibido ndim={array.ndim}")
        if array.shape[0] != len(vocab):
            raise ModelLoadError(
                f"El vocabulario tiene {len(vocab)} tokens pero la matriz {array.shape[0]} filas"
            )
        if array.shape[1] < 1:
            raise ModelLoadError("La dimensión de los vectores debe ser positiva")
        if not np.all(np.isfinite(array)):
            bad_row = int(np.flatnonzero(~np.all(np.isfinite(array), axis=1))[0])
            raise ModelLoadError("Vector con valores no finitos", token=vocab[bad_row])

        index: Dict[str, int] = {}
        for row, token in enumerate(vocab):
            if token in index:
                raise ModelLoadError("Token duplicado", token=token)
            index[token] = row

        # Normas acumuladas en float64 sin copiar la matriz
        norms = np.sqrt(np.einsum('ij,ij->i', array, array, dtype=np.float64))
        zero_rows = np.flatnonzero(norms == 0)
        if zero_rows.size:
            raise ModelLoadError("Vector de norma cero", token=vocab[int(zero_rows[0])])

        normalized = (array / norms.astype(array.dtype)[:, np.newaxis]).astype(dtype, copy=False)
        normalized.setflags(write=False)

        self._vocab: Tuple[str, ...] = tuple(vocab)
        self._index = index
        self._matrix = normalized
        self._digest: Optional[str] = None

    @property
    def vocab(self) -> Tuple[str, ...]:
        """Tokens en orden de fila"""
        return self._vocab

    @property
    def matrix(self) -> np.ndarray:
        """Matriz normalizada de solo lectura"""
        return self._matrix

    @property
    def dim(self) -> int:
        return int(self._matrix.shape[1])

    @property
    def index(self) -> Dict[str, int]:
        return dict(self._index)

    def __len__(self) -> int:
        return len(self._vocab)

    def __contains__(self, token: object) -> bool:
        return token in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._vocab)

    def row_id(self, token: str) -> int:
        """
        Obtener la fila de un token

        Raises:
            OutOfVocabularyError: Si el token no está en el vocabulario
        """
        try:
            return self._index[token]
        except KeyError:
            raise OutOfVocabularyError(token) from None

    def vector(self, token: str) -> np.ndarray:
        """Vector unitario de un token"""
        return self._matrix[self.row_id(token)]

    def cosine(self, a: str, b: str) -> float:
        """
        Similitud coseno entre dos tokens

        Args:
            a: Primer token
            b: Segundo token

        Returns:
            Producto escalar de las filas unitarias, acotado a [-1, 1]
        """
        row_a = self.row_id(a)
        row_b = self.row_id(b)
        if row_a == row_b:
            return 1.0
        value = float(np.dot(self._matrix[row_a].astype(np.float64),
                             self._matrix[row_b].astype(np.float64)))
        return float(np.clip(value, -1.0, 1.0))

    def most_similar(self, token: str, k: int) -> List[Neighbor]:
        """
        Los k tokens más similares a `token` (excluyéndolo)

        Búsqueda exacta por fuerza bruta: un producto matriz-vector y una
        selección parcial. Los empates se resuelven por fila ascendente.

        Args:
            token: Token consultado
            k: Número de vecinos (si k >= |vocab| se devuelven todos)

        Returns:
            Lista de vecinos ordenada por similitud descendente
        """
        if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
            raise ValueError(f"k debe ser un entero positivo, recibido: {k!r}")

        row = self.row_id(token)
        available = len(self._vocab) - 1
        k = min(int(k), available)
        if k == 0:
            return []

        scores = (self._matrix @ self._matrix[row]).astype(np.float64)
        scores[row] = -np.inf

        if k < available:
            # Incluir todos los empates con el k-ésimo valor antes de ordenar
            kth_value = np.partition(scores, -k)[-k]
            candidates = np.flatnonzero(scores >= kth_value)
        else:
            candidates = np.flatnonzero(np.isfinite(scores))

        order = np.lexsort((candidates, -scores[candidates]))
        selected = candidates[order][:k]
        similarities = np.clip(scores[selected], -1.0, 1.0)
        return [Neighbor(self._vocab[i], float(s)) for i, s in zip(selected, similarities)]

    @property
    def digest(self) -> str:
        """Huella SHA-256 del vocabulario y la matriz (para trazabilidad)"""
        if self._digest is None:
            hasher = hashlib.sha256()
            for token in self._vocab:
                hasher.update(token.encode('utf-8'))
                hasher.update(b'\n')
            hasher.update(np.ascontiguousarray(self._matrix, dtype='<f4').tobytes())
            self._digest = hasher.hexdigest()
        return self._digest

    def __repr__(self) -> str:
        return f"VectorModel(size={len(self._vocab)}, dim={self.dim})"



MODEL_FORMATS = ('word2vec-text', 'word2vec-binary')


def _read_header(path: Path) -> Tuple[int, int]:
    """Leer e interpretar la cabecera '<vocab_size> <dim>'"""
    with open(path, 'rb') as f:
        raw = f.readline()
    if not raw:
        raise ModelLoadError("Archivo vacío", line=1)
    try:
        text = raw.decode('utf-8').strip()
        size, dim = (int(part) for part in text.split())
    except (UnicodeDecodeError, ValueError):
        raise ModelLoadError(f"Cabecera mal formada: {raw[:80]!r}", line=1) from None
    if size < 1 or dim < 1:
        raise ModelLoadError(f"Cabecera con tamaños no positivos: {size} {dim}", line=1)
    return size, dim


def _locate_text_row(path: Path, dim: int, duplicates: bool = False) -> Tuple[Optional[int], Optional[str]]:
    """
    Buscar la primera fila defectuosa de un modelo de texto

    Solo se recorre el archivo cuando gensim ya ha fallado, para poder
    informar de la línea y el token.
    """
    seen = set()
    with open(path, 'r', encoding='utf-8', errors='replace') as f:
        f.readline()
        for line_number, raw in enumerate(f, start=2):
            parts = raw.rstrip().split(' ')
            token = parts[0] or None
            if duplicates:
                if token in seen:
                    return line_number, token
                seen.add(token)
                continue
            if len(parts) - 1 != dim:
                return line_number, token
            try:
                np.asarray(parts[1:], dtype=np.float32)
            except ValueError:
                return line_number, token
    return None, None


def _read_keyed_vectors(path: Path, binary: bool, size: int, dim: int) -> KeyedVectors:
    """Cargar con gensim y traducir sus errores a ModelLoadError"""
    try:
        return KeyedVectors.load_word2vec_format(str(path), binary=binary, datatype=np.float32)
    except EOFError:
        raise ModelLoadError(f"La cabecera declara {size} filas pero el archivo termina antes") from None
    except ValueError as e:
        line, token = (None, None) if binary else _locate_text_row(path, dim)
        raise ModelLoadError(f"Fila mal formada: se esperaban {dim} valores numéricos ({e})",
                             line=line, token=token) from e


def load_model(path: PathLike, format: str = 'word2vec-text', dtype=np.float32) -> VectorModel:
    """
    Cargar un modelo de vectores en formato word2vec

    Args:
        path: Ruta del archivo
        format: 'word2vec-text' o 'word2vec-binary'
        dtype: Tipo de almacenamiento de la matriz

    Returns:
        VectorModel con todas las filas normalizadas

    Raises:
        FileNotFoundError: Si el archivo no existe
        ModelLoadError: Si el contenido no respeta el formato
    """
    path = Path(path)
    if format not in MODEL_FORMATS:
        raise ValueError(f"Formato de modelo inválido: {format}")
    if not path.exists():
        raise FileNotFoundError(f"Modelo no encontrado: {path}")

    logger.info(f"Cargando modelo {format} desde: {path}")
    binary = format == 'word2vec-binary'
    size, dim = _read_header(path)
    keyed_vectors = _read_keyed_vectors(path, binary, size, dim)

    vocab = keyed_vectors.index_to_key
    vectors = keyed_vectors.vectors
    # gensim descarta en silencio las repeticiones de un token
    if len(vocab) != size:
        line, token = (None, None) if binary else _locate_text_row(path, dim, duplicates=True)
        raise ModelLoadError(f"Token duplicado: {size} filas declaradas, {len(vocab)} tokens distintos",
                             line=line, token=token)

    # La fila i de la matriz corresponde a la línea (o entrada) i + 2
    bad_rows = np.flatnonzero(~np.all(np.isfinite(vectors), axis=1))
    if bad_rows.size:
        row = int(bad_rows[0])
        raise ModelLoadError("Vector con valores no finitos", line=row + 2, token=vocab[row])
    zero_rows = np.flatnonzero(~np.any(vectors, axis=1))
    if zero_rows.size:
        row = int(zero_rows[0])
        raise ModelLoadError("Vector de norma cero", line=row + 2, token=vocab[row])

    model = VectorModel(vocab, vectors, dtype=dtype)
    logger.info(f"Modelo cargado: {len(model)} tokens, dimensión {model.dim}")
    return model


def to_keyed_vectors(model: VectorModel) -> KeyedVectors:
    """Convertir el modelo a KeyedVectors conservando el orden de filas"""
    keyed_vectors = KeyedVectors(vector_size=model.dim, count=0, dtype=np.float32)
    keyed_vectors.add_vectors(list(model.vocab), np.asarray(model.matrix, dtype=np.float32))
    # save_word2vec_format ordena por 'count' descendente
    for rank, token in enumerate(model.vocab):
        keyed_vectors.set_vecattr(token, 'count', len(model) - rank)
    return keyed_vectors


def save_model(model: VectorModel, path: PathLike, format: str = 'word2vec-text') -> None:
    """
    Guardar un modelo en formato word2vec (vectores ya normalizados)

    Args:
        model: Modelo a guardar
        path: Ruta de destino
        format: 'word2vec-text' o 'word2vec-binary'
    """
    if format not in MODEL_FORMATS:
        raise ValueError(f"Formato de modelo inválido: {format}")
    path = Path(path)
    to_keyed_vectors(model).save_word2vec_format(str(path), binary=format == 'word2vec-binary')
    logger.info(f"Modelo guardado en: {path}")

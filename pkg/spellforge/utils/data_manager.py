"""
Gestor de datos para la lectura y escritura de archivos de SpellForge
Maneja pares etiquetados, gold standards, semillas, perfiles, variantes e informes
"""

import csv
import io
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from spellforge import __version__
from spellforge.models.evaluation import EvalReport, GoldStandard, SweepRow, beta_label
from spellforge.models.variant_set import BatchResult, Variant, VariantSet
from spellforge.models.weight_profile import LabeledPair, PositionDistributions, WeightProfile
from spellforge.utils.errors import DataFormatError, ProfileError

PathLike = Union[str, Path]

# Cabeceras de las tablas TSV
FLAT_VARIANT_HEADER = ('seed', 'variant', 'ratio', 'cosine')
LABELED_HEADER = ('keyword', 'candidate', 'label')
GOLD_HEADER = ('keyword', 'misspelling')
CANDIDATE_HEADER = ('keyword', 'candidate', 'distance')
HEADER_MARKERS = ('keyword', 'seed')

TRUE_LABELS = {'1', 'true', 'yes'}
FALSE_LABELS = {'0', 'false', 'no'}


class DataManager:
    """
    Clase responsable de la persistencia de los datos de SpellForge
    Las tablas son TSV en UTF-8 y los documentos estructurados JSON
    """

    def __init__(self, delimiter: str = '\t'):
        """
        Inicializar el gestor de datos

        Args:
            delimiter: Separador de campos de las tablas
        """
        self.logger = logging.getLogger(__name__)
        self.delimiter = delimiter

    # ------------------------------------------------------------
    # Escritura
    # ------------------------------------------------------------

    def _write_text(self, path: PathLike, text: str):
        """
        Escribir un archivo de forma atómica (temporal + rename)

        Args:
            path: Ruta de destino
            text: Contenido completo
        """
        path = Path(path)
        fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix='.tmp', dir=path.parent or None)
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            os.replace(temp_name, path)
        except OSError as e:
            self.logger.error(f"Error escribiendo {path}: {e}")
            if os.path.exists(temp_name):
                os.remove(temp_name)
            raise
        self.logger.info(f"Archivo guardado: {path}")

    def _render_table(self, header: Sequence[str], rows: Iterable[Sequence]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, delimiter=self.delimiter, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
        return buffer.getvalue()

    @staticmethod
    def _render_json(data: Dict) -> str:
        return json.dumps(data, indent=2, ensure_ascii=False) + '\n'

    def save_json(self, data: Dict, path: PathLike):
        self._write_text(path, self._render_json(data))

    # ------------------------------------------------------------
    # Lectura de tablas
    # ------------------------------------------------------------

    def _read_rows(self, path: PathLike, min_fields: int) -> List[Tuple[int, List[str]]]:
        """
        Leer las filas útiles de una tabla delimitada

        Se ignoran líneas vacías, comentarios (#) y una cabecera opcional.

        Returns:
            Lista de (número de línea, campos)
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Archivo no encontrado: {path}")

        rows: List[Tuple[int, List[str]]] = []
        with open(path, 'r', encoding='utf-8', newline='') as f:
            for line_number, fields in enumerate(csv.reader(f, delimiter=self.delimiter), start=1):
                fields = [field.strip() for field in fields]
                if not fields or not any(fields) or fields[0].startswith('#'):
                    continue
                if not rows and fields[0].lower() in HEADER_MARKERS:
                    continue
                if len(fields) < min_fields:
                    raise DataFormatError(
                        f"Se esperaban al menos {min_fields} campos, encontrados {len(fields)}",
                        str(path), line_number
                    )
                rows.append((line_number, fields))
        return rows

    def load_labeled_pairs(self, path: PathLike) -> List[LabeledPair]:
        """
        Cargar pares etiquetados (keyword, candidato, etiqueta 1/0)

        Returns:
            Lista de LabeledPair
        """
        pairs = []
        for line_number, fields in self._read_rows(path, 3):
            label = fields[2].lower()
            if label in TRUE_LABELS:
                is_misspelling = True
            elif label in FALSE_LABELS:
                is_misspelling = False
            else:
                raise DataFormatError(f"Etiqueta inválida: {fields[2]!r} (use 1 o 0)", str(path), line_number)
            try:
                pairs.append(LabeledPair(fields[0], fields[1], is_misspelling))
            except ValueError as e:
                raise DataFormatError(str(e), str(path), line_number) from e

        self.logger.info(f"Cargados {len(pairs)} pares etiquetados desde {path}")
        return pairs

    def load_gold(self, path: PathLike) -> GoldStandard:
        """Cargar un gold standard (keyword, misspelling por línea)"""
        rows = self._read_rows(path, 2)
        gold = GoldStandard.from_pairs((fields[0], fields[1]) for _, fields in rows)
        self.logger.info(f"Gold standard cargado: {gold!r}")
        return gold

    def load_seeds(self, path: PathLike) -> List[str]:
        """Cargar semillas (una por línea, primer campo)"""
        return [fields[0] for _, fields in self._read_rows(path, 1)]

    def load_vocabulary(self, path: PathLike) -> List[str]:
        """
        Cargar un vocabulario (un token por línea)

        Cada línea no vacía es un token literal: no hay cabecera, comentarios
        ni comillas ('seed', '#tag' y '"x' son tokens).
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Archivo no encontrado: {path}")

        with open(path, 'r', encoding='utf-8') as f:
            tokens = [line.strip() for line in f]
        vocabulary = [token for token in tokens if token]
        self.logger.info(f"Vocabulario cargado desde {path}: {len(vocabulary)} tokens")
        return vocabulary

    def load_predictions(self, path: PathLike) -> Dict[str, Set[str]]:
        """
        Cargar predicciones desde una salida de generación

        Acepta el documento estructurado (.json) o la tabla plana.

        Returns:
            semilla -> conjunto de variantes
        """
        path = Path(path)
        if path.suffix.lower() == '.json':
            document = self._load_json(path)
            try:
                predictions = {entry['seed']: {v['token'] for v in entry['variants']}
                               for entry in document['results']}
                for seed in document.get('skipped', []):
                    predictions.setdefault(seed, set())
            except (KeyError, TypeError) as e:
                raise DataFormatError(f"Documento de variantes incompleto: {e}", str(path)) from e
            return predictions

        predictions: Dict[str, Set[str]] = {}
        for _, fields in self._read_rows(path, 1):
            variants = predictions.setdefault(fields[0], set())
            if len(fields) > 1 and fields[1]:
                variants.add(fields[1])
        return predictions

    def _load_json(self, path: PathLike) -> Dict:
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Archivo no encontrado: {path}")
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise DataFormatError(f"JSON inválido: {e}", str(path)) from e

    # ------------------------------------------------------------
    # Perfiles de pesos
    # ------------------------------------------------------------

    def load_profile(self, path: PathLike) -> WeightProfile:
        """
        Cargar un perfil de pesos

        Raises:
            FileNotFoundError: Si el archivo no existe
            ProfileError: Si el contenido no es un perfil válido
        """
        path = Path(path)
        if not path.exists():
            raise FileNotFoundError(f"Perfil no encontrado: {path}")
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
        try:
            profile = WeightProfile.from_text(text)
        except ProfileError as e:
            raise ProfileError(f"{path}: {e}") from e
        self.logger.info(f"Perfil cargado desde {path}: {list(profile.weights)}")
        return profile

    def save_profile(self, profile: WeightProfile, path: PathLike):
        self._write_text(path, profile.to_text())

    def save_distributions(self, distributions: PositionDistributions, path: PathLike):
        self.save_json(distributions.to_dict(), path)

    # ------------------------------------------------------------
    # Variantes
    # ------------------------------------------------------------

    def render_variants(self, batch: BatchResult, output_format: str = 'structured',
                        model_info: Optional[Dict] = None) -> str:
        """
        Serializar los resultados de generación

        Args:
            batch: Resultados del lote
            output_format: 'structured' (JSON) o 'flat' (TSV)
            model_info: Datos de procedencia del modelo (digest, tamaño...)

        Returns:
            Texto del documento
        """
        if output_format == 'flat':
            rows = [(variant_set.seed, variant.token, f"{variant.ratio:.6f}", f"{variant.cosine:.6f}")
                    for variant_set in batch.results.values()
                    for variant in variant_set.variants]
            return self._render_table(FLAT_VARIANT_HEADER, rows)
        if output_format != 'structured':
            raise ValueError(f"Formato de salida inválido: {output_format}")

        document = {
            'generator': f"spellforge {__version__}",
            'model': model_info or {},
            'results': [variant_set.to_dict() for variant_set in batch.results.values()],
            'skipped': list(batch.skipped),
        }
        return self._render_json(document)

    def save_variants(self, batch: BatchResult, path: PathLike, output_format: str = 'structured',
                      model_info: Optional[Dict] = None):
        self._write_text(path, self.render_variants(batch, output_format, model_info))

    def load_variant_sets(self, path: PathLike) -> List[VariantSet]:
        """Cargar conjuntos de variantes (estructurado o plano)"""
        path = Path(path)
        if path.suffix.lower() == '.json':
            document = self._load_json(path)
            try:
                return [VariantSet.from_dict(entry) for entry in document['results']]
            except (KeyError, TypeError, ValueError) as e:
                raise DataFormatError(f"Documento de variantes incompleto: {e}", str(path)) from e

        grouped: Dict[str, List[Variant]] = {}
        for line_number, fields in self._read_rows(path, 2):
            try:
                ratio = float(fields[2]) if len(fields) > 2 else 0.0
                cosine = float(fields[3]) if len(fields) > 3 else 0.0
            except ValueError as e:
                raise DataFormatError(f"Valor numérico inválido: {e}", str(path), line_number) from e
            grouped.setdefault(fields[0], []).append(Variant(fields[1], ratio, cosine))
        return [VariantSet.build(seed, variants) for seed, variants in grouped.items()]

    # ------------------------------------------------------------
    # Evaluación
    # ------------------------------------------------------------

    def render_sweep(self, rows: Sequence[SweepRow], betas: Sequence[float]) -> str:
        """Tabla del barrido: mode, lt, tp, fp, fn, precision, recall, f_<beta>..."""
        header = ['mode', 'lt', 'tp', 'fp', 'fn', 'precision', 'recall'] + [beta_label(b) for b in betas]
        table = []
        for row in rows:
            record = row.as_record(betas)
            table.append([record['mode'], f"{record['lt']:.2f}", record['tp'], record['fp'], record['fn']]
                         + [f"{record[name]:.6f}" for name in header[5:]])
        return self._render_table(header, table)

    def save_sweep(self, rows: Sequence[SweepRow], betas: Sequence[float], path: PathLike):
        self._write_text(path, self.render_sweep(rows, betas))

    def render_report(self, report: EvalReport) -> str:
        return self._render_json(report.to_dict())

    def render_candidates(self, candidates: Dict[str, List[Tuple[str, int]]]) -> str:
        rows = [(keyword, candidate, distance)
                for keyword, items in candidates.items()
                for candidate, distance in items]
        return self._render_table(CANDIDATE_HEADER, rows)

    def render_labeled_pairs(self, pairs: Sequence[LabeledPair]) -> str:
        rows = [(pair.keyword, pair.candidate, 1 if pair.is_misspelling else 0) for pair in pairs]
        return self._render_table(LABELED_HEADER, rows)

    def render_gold(self, gold: GoldStandard) -> str:
        return self._render_table(GOLD_HEADER, gold.pairs())

    def save_gold(self, gold: GoldStandard, path: PathLike):
        self._write_text(path, self.render_gold(gold))

    def write_output(self, text: str, path: Optional[PathLike]) -> None:
        """Escribir en un archivo (atómico) o en la salida estándar"""
        if path is None:
            print(text, end='')
        else:
            self._write_text(path, text)


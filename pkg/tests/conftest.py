"""
Fixtures compartidas: modelos de juguete, gold standards y escritura de archivos
"""

import os
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from spellforge.models.evaluation import GoldStandard
from spellforge.models.vector_model import VectorModel, save_model

DATA_DIR = Path(__file__).parent / 'data'

# Tokens del modelo de juguete y su ángulo en grados sobre el círculo unidad
ASPIRIN_ANGLES = {
    'aspirin': 0.0,
    'asprin': 10.0,
    'tylenol': -15.0,
    'aspirn': 25.0,
    'ibuprofen': 90.0,
    'advil': 100.0,
}


def unit_vectors(angles):
    radians = np.radians(np.asarray(list(angles), dtype=np.float64))
    return np.column_stack([np.cos(radians), np.sin(radians)])


@pytest.fixture
def aspirin_model():
    """Modelo 2D: aspirn solo se alcanza a través de asprin con ssl=2"""
    return VectorModel(list(ASPIRIN_ANGLES), unit_vectors(ASPIRIN_ANGLES.values()))


@pytest.fixture
def write_model(tmp_path):
    """Escribir un modelo en tmp_path y devolver la ruta"""
    def _write(model: VectorModel, name: str = 'model.txt', format: str = 'word2vec-text') -> Path:
        path = tmp_path / name
        save_model(model, path, format)
        return path
    return _write


@pytest.fixture
def aspirin_model_file(aspirin_model, write_model):
    return write_model(aspirin_model)


@pytest.fixture
def write_text(tmp_path):
    """Escribir un archivo de texto en tmp_path y devolver la ruta"""
    def _write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return _write


@pytest.fixture
def aspirin_gold():
    return GoldStandard({
        'aspirin': {'asprin', 'aspirn', 'asprine'},
        'tylenol': {'tylenoll'},
    })


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

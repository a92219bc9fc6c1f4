"""
Prueba opcional con un modelo real completo (SPELLFORGE_MODEL)
"""

import pytest

from spellforge.models.variant_set import GenerationConfig
from spellforge.models.vector_model import load_model
from spellforge.utils.generator import generate_variants
from spellforge.utils.settings import MODEL_ENV_VAR, get_default_model_path, infer_model_format

MODEL_PATH = get_default_model_path()


@pytest.mark.integration
@pytest.mark.skipif(MODEL_PATH is None, reason=f"{MODEL_ENV_VAR} no está definida")
def test_klonopin_variants_from_full_model():
    model = load_model(MODEL_PATH, infer_model_format(MODEL_PATH))
    result = generate_variants('klonopin', model, GenerationConfig(ssl=4000, lt=0.75))
    assert {'klonipin', 'clonopin', 'klonapin'} <= set(result.tokens)

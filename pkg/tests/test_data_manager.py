"""
Pruebas de lectura y escritura de archivos
"""

import json

import pytest

from spellforge.models.evaluation import GoldStandard, SweepRow
from spellforge.models.variant_set import BatchResult, GenerationConfig, Variant, VariantSet
from spellforge.models.weight_profile import LabeledPair, WeightProfile
from spellforge.utils.data_manager import DataManager
from spellforge.utils.errors import DataFormatError, ProfileError
from spellforge.utils.evaluate import report_from_counts


@pytest.fixture
def data_manager():
    return DataManager()


@pytest.fixture
def aspirin_batch():
    config = GenerationConfig(ssl=2)
    variant_set = VariantSet.build('aspirin', [Variant('asprin', 12 / 13, 0.98480775),
                                               Variant('aspirn', 12 / 13, 0.90630779)], config)
    return BatchResult(results={'aspirin': variant_set}, skipped=['klonopin'])


class TestTables:
    """Tablas TSV de entrada"""

    def test_labeled_pairs(self, data_manager, write_text):
        path = write_text('pairs.tsv', "keyword\tcandidate\tlabel\n# comentario\n\n"
                                       "klonopin\tklonipin\t1\nklonopin\tclonidine\t0\n")
        assert data_manager.load_labeled_pairs(path) == [
            LabeledPair('klonopin', 'klonipin', True),
            LabeledPair('klonopin', 'clonidine', False),
        ]

    def test_invalid_label_reports_line(self, data_manager, write_text):
        path = write_text('pairs.tsv', "klonopin\tklonipin\t1\nklonopin\tclonidine\tquizá\n")
        with pytest.raises(DataFormatError) as excinfo:
            data_manager.load_labeled_pairs(path)
        assert excinfo.value.line == 2

    def test_missing_fields(self, data_manager, write_text):
        with pytest.raises(DataFormatError):
            data_manager.load_labeled_pairs(write_text('pairs.tsv', "klonopin\tklonipin\n"))

    def test_gold(self, data_manager, write_text):
        path = write_text('gold.tsv', "keyword\tmisspelling\naspirin\tasprin\naspirin\taspirn\n"
                                      "tylenol\ttylenoll\n")
        gold = data_manager.load_gold(path)
        assert gold.to_dict() == {'aspirin': ['aspirn', 'asprin'], 'tylenol': ['tylenoll']}

    def test_gold_round_trip(self, data_manager, aspirin_gold, tmp_path):
        path = tmp_path / 'gold.tsv'
        data_manager.save_gold(aspirin_gold, path)
        assert data_manager.load_gold(path).to_dict() == aspirin_gold.to_dict()

    def test_seeds(self, data_manager, write_text):
        assert data_manager.load_seeds(write_text('seeds.txt', "seed\naspirin\n\ntylenol\n")) == \
            ['aspirin', 'tylenol']

    def test_missing_file(self, data_manager, tmp_path):
        with pytest.raises(FileNotFoundError):
            data_manager.load_seeds(tmp_path / 'nada.txt')

    def test_vocabulary_tokens_are_literal(self, data_manager, write_text):
        path = write_text('vocab.txt', 'seed\n"quoted\n#tag\n\n  klonopin  \nkeyword\n')
        assert data_manager.load_vocabulary(path) == ['seed', '"quoted', '#tag', 'klonopin', 'keyword']

    def test_vocabulary_missing_file(self, data_manager, tmp_path):
        with pytest.raises(FileNotFoundError):
            data_manager.load_vocabulary(tmp_path / 'nada.txt')


class TestVariants:
    """Salidas de generación"""

    def test_flat_output(self, data_manager, aspirin_batch):
        text = data_manager.render_variants(aspirin_batch, 'flat')
        assert text == ("seed\tvariant\tratio\tcosine\n"
                        "aspirin\taspirn\t0.923077\t0.906308\n"
                        "aspirin\tasprin\t0.923077\t0.984808\n")

    def test_structured_output(self, data_manager, aspirin_batch):
        document = json.loads(data_manager.render_variants(aspirin_batch, 'structured', {'digest': 'abc'}))
        assert document['model'] == {'digest': 'abc'}
        assert document['skipped'] == ['klonopin']
        result = document['results'][0]
        assert result['seed'] == 'aspirin'
        assert result['config']['ssl'] == 2
        assert [v['token'] for v in result['variants']] == ['aspirn', 'asprin']

    def test_unknown_output_format(self, data_manager, aspirin_batch):
        with pytest.raises(ValueError):
            data_manager.render_variants(aspirin_batch, 'xml')

    @pytest.mark.parametrize('name, output_format', [('v.json', 'structured'), ('v.tsv', 'flat')])
    def test_predictions_and_variant_sets(self, data_manager, aspirin_batch, tmp_path, name, output_format):
        path = tmp_path / name
        data_manager.save_variants(aspirin_batch, path, output_format)
        predictions = data_manager.load_predictions(path)
        assert predictions['aspirin'] == {'asprin', 'aspirn'}
        variant_sets = data_manager.load_variant_sets(path)
        assert variant_sets[0].tokens == ['aspirn', 'asprin']

    def test_structured_predictions_keep_skipped_seeds(self, data_manager, aspirin_batch, tmp_path):
        path = tmp_path / 'v.json'
        data_manager.save_variants(aspirin_batch, path)
        assert data_manager.load_predictions(path)['klonopin'] == set()

    def test_invalid_json(self, data_manager, write_text):
        with pytest.raises(DataFormatError):
            data_manager.load_predictions(write_text('v.json', '{"results": '))


class TestProfilesAndReports:
    """Perfiles, informes y escritura atómica"""

    def test_profile_round_trip(self, data_manager, tmp_path):
        profile = WeightProfile((1.05, 1.025, 1.0, 0.975, 0.95), window=4)
        path = tmp_path / 'profile.txt'
        data_manager.save_profile(profile, path)
        assert data_manager.load_profile(path) == profile

    def test_bad_profile_names_file(self, data_manager, write_text):
        path = write_text('profile.txt', "weights = 1 1\n")
        with pytest.raises(ProfileError, match='profile.txt'):
            data_manager.load_profile(path)

    def test_sweep_table(self, data_manager):
        rows = [SweepRow('default', 0.55, report_from_counts(2, 1, 1, (1.0,))),
                SweepRow('default', 0.6, report_from_counts(1, 0, 2, (1.0,)))]
        lines = data_manager.render_sweep(rows, (1.0,)).splitlines()
        assert lines[0] == 'mode\tlt\ttp\tfp\tfn\tprecision\trecall\tf_1'
        assert lines[1] == 'default\t0.55\t2\t1\t1\t0.666667\t0.666667\t0.666667'
        assert lines[2] == 'default\t0.60\t1\t0\t2\t1.000000\t0.333333\t0.500000'

    def test_atomic_write_leaves_no_temporary_files(self, data_manager, tmp_path):
        data_manager.save_json({'a': 1}, tmp_path / 'out.json')
        data_manager.save_json({'a': 2}, tmp_path / 'out.json')
        assert [p.name for p in tmp_path.iterdir()] == ['out.json']
        assert json.loads((tmp_path / 'out.json').read_text(encoding='utf-8')) == {'a': 2}

    def test_write_output_to_stdout(self, data_manager, capsys):
        data_manager.write_output('hola\n', None)
        assert capsys.readouterr().out == 'hola\n'

    def test_render_gold(self, data_manager):
        text = data_manager.render_gold(GoldStandard({'b': {'bb'}, 'a': {'ab', 'aa'}}))
        assert text == "keyword\tmisspelling\na\taa\na\tab\nb\tbb\n"

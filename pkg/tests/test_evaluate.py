"""
Pruebas de la evaluación intrínseca (gold standard) y extrínseca (recuperación)
"""

import itertools
from functools import lru_cache

import pytest

from spellforge.models.evaluation import GoldStandard, beta_label
from spellforge.models.variant_set import GenerationConfig, Variant, VariantSet
from spellforge.models.weight_profile import WeightProfile
from spellforge.utils.errors import (ConfigurationError, CorpusReadError, EvaluationError,
                                     ThresholdError, UndefinedGainError)
from spellforge.utils.evaluate import (best_rows, distance_histogram, expand_keywords, f_beta,
                                       fuzzy_candidates, fuzzy_threshold, gold_statistics,
                                       retrieval_count, retrieval_gain, score, split_gold,
                                       threshold_sweep, tokenize)
from spellforge.utils.settings import default_sweep_grid


def naive_distance(a, b):
    """Levenshtein clásico por recursión memoizada sobre los índices"""
    @lru_cache(maxsize=None)
    def distance(i, j):
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        return min(distance(i + 1, j) + 1, distance(i, j + 1) + 1,
                   distance(i + 1, j + 1) + (a[i] != b[j]))

    return distance(0, 0)


class TestMetrics:
    """Precisión, recall y F_beta"""

    def test_f_scores_for_known_precision_and_recall(self):
        assert f_beta(0.79, 0.61, 1.0) == pytest.approx(0.69, abs=0.01)
        assert f_beta(0.79, 0.61, 0.25) == pytest.approx(0.77, abs=0.01)
        assert f_beta(0.79, 0.61, 1.0) == pytest.approx(0.688429, abs=1e-6)

    def test_zero_precision_and_recall(self):
        assert f_beta(0.0, 0.0, 1.0) == 0.0

    def test_beta_label(self):
        assert beta_label(1.0) == 'f_1'
        assert beta_label(0.25) == 'f_0.25'

    def test_hand_computed_report(self, aspirin_gold):
        predictions = {'aspirin': {'asprin', 'aspirn', 'advil'}, 'tylenol': set()}
        report = score(predictions, aspirin_gold)
        assert (report.tp, report.fp, report.fn) == (2, 1, 2)
        assert report.precision == pytest.approx(2 / 3)
        assert report.recall == pytest.approx(0.5)
        assert report.f(1.0) == pytest.approx(f_beta(2 / 3, 0.5, 1.0))
        assert report.undefined == ()
        assert report.per_keyword['tylenol'].undefined == ('precision', 'f_1', 'f_0.25')
        assert report.macro['precision'] == pytest.approx(1 / 3)

    def test_only_predicted_keywords_count(self, aspirin_gold):
        report = score({'aspirin': {'asprin'}}, aspirin_gold)
        assert (report.tp, report.fp, report.fn) == (1, 0, 2)

    def test_keyword_in_its_own_predictions_ignored(self, aspirin_gold):
        report = score({'aspirin': {'aspirin', 'asprin'}}, aspirin_gold)
        assert report.fp == 0

    def test_empty_predictions_flag_undefined_precision(self, aspirin_gold):
        report = score({'aspirin': set()}, aspirin_gold)
        assert report.precision == 0.0
        assert 'precision' in report.undefined

    def test_unknown_keyword(self, aspirin_gold):
        with pytest.raises(EvaluationError) as excinfo:
            score({'xanax': {'xanex'}}, aspirin_gold)
        assert excinfo.value.unknown == ['xanax']

    def test_empty_gold(self):
        with pytest.raises(EvaluationError):
            score({}, GoldStandard({}))

    def test_report_to_dict(self, aspirin_gold):
        data = score({'aspirin': {'asprin'}}, aspirin_gold).to_dict()
        assert data['f_1'] == pytest.approx(0.5)
        assert set(data['per_keyword']) == {'aspirin'}

    def test_f1_is_harmonic_mean(self, rng):
        for precision, recall in rng.uniform(0.01, 1.0, size=(200, 2)):
            assert f_beta(precision, recall, 1.0) == pytest.approx(
                2 * precision * recall / (precision + recall), abs=1e-12)
            assert f_beta(precision, recall, 1.0) == pytest.approx(f_beta(recall, precision, 1.0), abs=1e-12)

    def test_small_beta_tends_to_precision(self):
        assert f_beta(0.79, 0.61, 1e-6) == pytest.approx(0.79, abs=1e-9)
        assert f_beta(0.79, 0.61, 0.25) != pytest.approx(f_beta(0.61, 0.79, 0.25), abs=1e-6)

    def test_set_arithmetic_example(self):
        report = score({'k': {'a', 'd'}}, GoldStandard({'k': {'a', 'b', 'c'}}))
        assert (report.tp, report.fp, report.fn) == (1, 1, 2)
        assert report.precision == pytest.approx(0.5)
        assert report.recall == pytest.approx(1 / 3)

    def test_perfect_predictions(self, aspirin_gold):
        report = score(aspirin_gold.to_dict(), aspirin_gold)
        assert (report.precision, report.recall) == (1.0, 1.0)
        assert all(value == pytest.approx(1.0) for value in report.f_scores.values())

    def test_invariant_under_permutations(self, rng):
        pairs = [('aspirin', 'asprin'), ('aspirin', 'aspirn'), ('aspirin', 'asprine'),
                 ('tylenol', 'tylenoll'), ('tylenol', 'tylenl'), ('advil', 'advill')]
        predictions = {'aspirin': ['asprin', 'asprine', 'aspirinn'], 'tylenol': ['tylenl'],
                       'advil': ['adville', 'advill']}
        expected = score(predictions, GoldStandard.from_pairs(pairs)).to_dict()
        keywords = list(predictions)
        for _ in range(10):
            shuffled_pairs = [pairs[i] for i in rng.permutation(len(pairs))]
            shuffled = {}
            for i in rng.permutation(len(keywords)):
                variants = predictions[keywords[i]]
                shuffled[keywords[i]] = [variants[j] for j in rng.permutation(len(variants))]
            assert score(shuffled, GoldStandard.from_pairs(shuffled_pairs)).to_dict() == expected


class TestThresholdSweep:
    """Barrido de umbrales sobre el modelo de juguete"""

    def test_default_grid(self):
        assert default_sweep_grid() == [0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95]

    def test_rows_and_recall_shape(self, aspirin_model, aspirin_gold):
        rows = threshold_sweep(['aspirin', 'tylenol'], aspirin_model, GenerationConfig(ssl=2),
                               aspirin_gold, default_sweep_grid())
        assert len(rows) == 9
        assert {row.mode for row in rows} == {'default'}
        recalls = [row.report.recall for row in rows]
        assert all(a >= b for a, b in zip(recalls, recalls[1:]))
        assert rows[4].report.tp == 2
        assert rows[-1].report.tp == 0

    def test_both_modes_with_profile(self, aspirin_model, aspirin_gold):
        config = GenerationConfig(ssl=2, profile=WeightProfile.uniform())
        rows = threshold_sweep(['aspirin'], aspirin_model, config, aspirin_gold, default_sweep_grid())
        assert [row.mode for row in rows] == ['default'] * 9 + ['weighted'] * 9

    def test_unknown_seeds_count_as_empty_predictions(self, aspirin_model):
        gold = GoldStandard({'aspirin': {'asprin'}, 'klonopin': {'klonipin'}})
        rows = threshold_sweep(['aspirin', 'klonopin'], aspirin_model, GenerationConfig(ssl=2),
                               gold, [0.75])
        assert rows[0].report.fn == 1

    def test_invalid_grid(self, aspirin_model, aspirin_gold):
        with pytest.raises(ConfigurationError):
            threshold_sweep(['aspirin'], aspirin_model, GenerationConfig(), aspirin_gold, [1.2])

    def test_best_rows(self, aspirin_model, aspirin_gold):
        rows = threshold_sweep(['aspirin'], aspirin_model, GenerationConfig(ssl=2),
                               aspirin_gold, default_sweep_grid())
        best = best_rows(rows, 1.0)
        assert best['default'].lt == 0.55
        assert best['default'].report.tp == 2


class TestGoldConstruction:
    """Candidatos difusos y análisis del gold"""

    @pytest.mark.parametrize('keyword, expected', [('klonopin', 6), ('abcd', 2), ('abc', 1)])
    def test_fuzzy_threshold(self, keyword, expected):
        assert fuzzy_threshold(keyword) == expected

    def test_short_keyword(self):
        with pytest.raises(ThresholdError):
            fuzzy_threshold('ab')

    def test_fuzzy_candidates(self):
        vocabulary = ['klonopin', 'klonipin', 'clonopin', 'xanax', 'klonopinnn', 'k']
        candidates = fuzzy_candidates('klonopin', vocabulary)
        assert candidates[:3] == [('clonopin', 1), ('klonipin', 1), ('klonopinnn', 2)]
        assert 'klonopin' not in [token for token, _ in candidates]
        assert all(distance <= 6 for _, distance in candidates)

    def test_diazepam_candidates(self):
        assert fuzzy_candidates('diazepam', ['diazepam', 'diazapam', 'ibuprofen']) == [('diazapam', 1)]

    def test_only_the_keyword_in_vocabulary(self):
        assert fuzzy_candidates('xanax', ['xanax']) == []

    @pytest.mark.parametrize('keyword', ['abcab', 'cab', 'aabbcc'])
    def test_candidates_match_exhaustive_search(self, keyword):
        vocabulary = [''.join(letters) for size in range(1, 6)
                      for letters in itertools.product('abc', repeat=size)]
        threshold = fuzzy_threshold(keyword)
        expected = sorted(((token, naive_distance(keyword, token)) for token in vocabulary
                           if token != keyword and naive_distance(keyword, token) <= threshold),
                          key=lambda item: (item[1], item[0]))
        assert fuzzy_candidates(keyword, vocabulary) == expected

    def test_gold_drops_keyword_from_its_own_set(self):
        gold = GoldStandard({'aspirin': {'aspirin', 'asprin'}})
        assert gold['aspirin'] == frozenset({'asprin'})

    def test_gold_statistics(self, aspirin_gold):
        stats = gold_statistics(aspirin_gold)
        assert stats == {'keywords': 2, 'total': 4, 'mean': 2.0,
                         'per_keyword': {'aspirin': 3, 'tylenol': 1}}

    def test_distance_histogram(self, aspirin_gold):
        assert distance_histogram(aspirin_gold) == {1: 3, 2: 1}

    def test_split_gold(self):
        gold = GoldStandard({f"kw{i}": {f"kw{i}x"} for i in range(20)})
        train, test = split_gold(gold, 0.5, seed=3)
        assert len(train) == len(test) == 10
        assert set(train.keywords).isdisjoint(test.keywords)
        assert set(train.keywords) | set(test.keywords) == set(gold.keywords)
        again_train, _ = split_gold(gold, 0.5, seed=3)
        assert again_train.keywords == train.keywords

    def test_split_needs_two_keywords(self):
        with pytest.raises(EvaluationError):
            split_gold(GoldStandard({'aspirin': {'asprin'}}))


@pytest.fixture
def synthetic_corpus(tmp_path):
    """1000 documentos: 100 con klonopin, 40 con klonipin (20 con ambos)"""
    lines = []
    for i in range(1000):
        words = [f"doc{i}", 'texto']
        if i % 10 == 0:
            words.append('Klonopin.')
        if i % 25 == 0:
            words.append('klonipin,')
        if i % 7 == 0:
            words.append('klonopins')
        lines.append(' '.join(words))
    path = tmp_path / 'corpus.txt'
    path.write_text('\n'.join(lines) + '\n', encoding='utf-8')
    return path


class TestRetrieval:
    """Documentos recuperados y ganancia"""

    def test_tokenize(self):
        assert tokenize('Tomé KLONOPIN, y 2 aspirin_x!') == ['tomé', 'klonopin', 'y', '2', 'aspirin', 'x']

    def test_expand_keywords(self):
        variants = [VariantSet.build('klonopin', [Variant('klonipin', 0.875, 0.9)])]
        assert expand_keywords(['klonopin', 'xanax'], variants) == {'klonopin', 'klonipin', 'xanax'}

    def test_counts_on_synthetic_corpus(self, synthetic_corpus):
        base = retrieval_count(synthetic_corpus, ['klonopin'])
        expanded = retrieval_count(synthetic_corpus, ['klonopin', 'klonipin'])
        assert (base, expanded) == (100, 120)
        assert retrieval_gain(base, expanded) == pytest.approx(0.2)

    def test_parallel_count_matches_sequential(self, synthetic_corpus):
        keywords = ['klonopin', 'klonipin', 'klonopins']
        sequential = retrieval_count(synthetic_corpus, keywords)
        assert retrieval_count(synthetic_corpus, keywords, workers=3, chunk_size=64) == sequential

    def test_multi_token_keywords_match_phrases(self):
        documents = ['dosis de klonopin xr', 'xr y klonopin', 'klonopin_xr diario']
        assert retrieval_count(documents, ['klonopin_xr']) == 2

    def test_whole_token_match(self):
        assert retrieval_count(['klonopins diarios', 'sin nada'], ['klonopin']) == 0

    @pytest.mark.parametrize('base, expanded, gain', [(5579, 9348, 0.676), (5579, 7677, 0.376)])
    def test_relative_gain(self, base, expanded, gain):
        assert retrieval_gain(base, expanded) == pytest.approx(gain, abs=0.001)

    def test_zero_base(self):
        with pytest.raises(UndefinedGainError):
            retrieval_gain(0, 10)

    def test_missing_corpus(self, tmp_path):
        with pytest.raises(CorpusReadError):
            retrieval_count(tmp_path / 'nada.txt', ['klonopin'])

    def test_empty_keywords(self):
        with pytest.raises(ValueError):
            retrieval_count(['a b'], [])

    def test_superset_keywords_never_decrease_the_count(self, rng):
        words = ['klonopin', 'klonipin', 'xanax', 'zanax', 'dosis', 'hoy']
        for _ in range(20):
            documents = [' '.join(rng.choice(words, size=rng.integers(1, 6))) for _ in range(50)]
            subset = set(rng.choice(words, size=2, replace=False)) | {'dosis hoy'}
            superset = subset | set(rng.choice(words, size=2, replace=False))
            assert retrieval_count(documents, subset) <= retrieval_count(documents, superset)

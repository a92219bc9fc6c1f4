"""
Gold standard e informes de evaluación
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Tuple

logger = logging.getLogger(__name__)


def beta_label(beta: float) -> str:
    """Nombre de columna para F_beta (f_1, f_0.25, ...)"""
    return f"f_{beta:g}"


class GoldStandard:
    """
    Mapa keyword -> conjunto de misspellings verdaderos

    Una keyword nunca aparece en su propio conjunto: si el archivo la
    incluye, se descarta con un aviso.
    """

    def __init__(self, entries: Mapping[str, Iterable[str]]):
        self._entries: Dict[str, FrozenSet[str]] = {}
        for keyword, misspellings in entries.items():
            cleaned = set(misspellings)
            if keyword in cleaned:
                logger.warning(f"Se descarta la keyword '{keyword}' de su propio conjunto de misspellings")
                cleaned.discard(keyword)
            self._entries[keyword] = frozenset(cleaned)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[str, str]]) -> 'GoldStandard':
        """Construir desde pares (keyword, misspelling)"""
        entries: Dict[str, set] = {}
        for keyword, misspelling in pairs:
            entries.setdefault(keyword, set()).add(misspelling)
        return cls(entries)

    @property
    def keywords(self) -> List[str]:
        return sorted(self._entries)

    @property
    def total(self) -> int:
        return sum(len(misspellings) for misspellings in self._entries.values())

    def subset(self, keywords: Iterable[str]) -> 'GoldStandard':
        return GoldStandard({keyword: self._entries[keyword] for keyword in keywords})

    def pairs(self) -> List[Tuple[str, str]]:
        return [(keyword, misspelling) for keyword in self.keywords
                for misspelling in sorted(self._entries[keyword])]

    def __getitem__(self, keyword: str) -> FrozenSet[str]:
        return self._entries[keyword]

    def __contains__(self, keyword: object) -> bool:
        return keyword in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(self.keywords)

    def __len__(self) -> int:
        return len(self._entries)

    def to_dict(self) -> Dict[str, List[str]]:
        return {keyword: sorted(self._entries[keyword]) for keyword in self.keywords}

    def __repr__(self) -> str:
        return f"GoldStandard(keywords={len(self)}, misspellings={self.total})"


@dataclass
class EvalReport:
    """
    Recuentos tp/fp/fn y métricas derivadas

    `undefined` lista las métricas cuyo denominador era cero (se definen
    como 0). `per_keyword` contiene los subinformes por keyword y `macro`
    sus promedios.
    """
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_scores: Dict[float, float]
    undefined: Tuple[str, ...] = ()
    per_keyword: Dict[str, 'EvalReport'] = field(default_factory=dict)
    macro: Dict[str, float] = field(default_factory=dict)

    def f(self, beta: float) -> float:
        return self.f_scores[beta]

    def to_dict(self) -> Dict:
        data = {
            'tp': self.tp,
            'fp': self.fp,
            'fn': self.fn,
            'precision': self.precision,
            'recall': self.recall,
        }
        for beta, value in self.f_scores.items():
            data[beta_label(beta)] = value
        data['undefined'] = list(self.undefined)
        if self.macro:
            data['macro'] = dict(self.macro)
        if self.per_keyword:
            data['per_keyword'] = {keyword: report.to_dict()
                                   for keyword, report in self.per_keyword.items()}
        return data


@dataclass
class SweepRow:
    """Fila de un barrido de umbrales: modo, lt y su informe"""
    mode: str
    lt: float
    report: EvalReport

    def as_record(self, betas: Iterable[float]) -> Dict:
        record = {
            'mode': self.mode,
            'lt': self.lt,
            'tp': self.report.tp,
            'fp': self.report.fp,
            'fn': self.report.fn,
            'precision': self.report.precision,
            'recall': self.report.recall,
        }
        for beta in betas:
            record[beta_label(beta)] = self.report.f_scores[beta]
        return record

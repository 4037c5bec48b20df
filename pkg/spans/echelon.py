"""
Hermite normal form over the principal ideal domain Q[D].

Vectors are lists of PolyV (read as polynomials in D).  Every echelon row
remembers the Q[D]-combination of input rows it equals, so membership can
return a witness in terms of the original generators.
"""
from dataclasses import dataclass

from arith.poly import PolyV
from utils.log import get_logger

logger = get_logger(__name__)


@dataclass
class EchelonRow:
    pivot: int
    entries: list
    combination: list


def _is_zero(vec):
    return all(x.is_zero() for x in vec)


def _axpy(target, coef, source):
    """target - coef * source, entrywise"""
    return [t - coef * s if s else t for t, s in zip(target, source)]


def hermite_form(rows, width):
    """
    Hermite normal form of the Q[D]-module spanned by ``rows``.

    Pivots are monic, strictly increasing in column, and every entry above a
    pivot has lower D-degree than the pivot.

    Returns:
        list of EchelonRow sorted by pivot column
    """
    count = len(rows)
    work = []
    for idx, row in enumerate(rows):
        if len(row) != width:
            raise ValueError(f"row of width {len(row)}, expected {width}")
        if not _is_zero(row):
            combo = [PolyV.constant(1) if k == idx else PolyV() for k in range(count)]
            work.append((list(row), combo))

    echelon = []
    for col in range(width):
        live = [w for w in work if not w[0][col].is_zero()]
        if not live:
            continue
        rest = [w for w in work if w[0][col].is_zero()]
        # Euclid down the column until one row carries the gcd
        while len(live) > 1:
            live.sort(key=lambda w: w[0][col].degree)
            head_row, head_combo = live[0]
            lead = head_row[col]
            nxt = [live[0]]
            for row, combo in live[1:]:
                quot = row[col] // lead
                row = _axpy(row, quot, head_row)
                combo = _axpy(combo, quot, head_combo)
                if row[col].is_zero():
                    if not _is_zero(row):
                        rest.append((row, combo))
                else:
                    nxt.append((row, combo))
            live = nxt
        row, combo = live[0]
        scale = 1 / row[col].leading()
        row = [x.scale(scale) for x in row]
        combo = [x.scale(scale) for x in combo]
        echelon.append(EchelonRow(col, row, combo))
        work = rest

    # reduce entries above each pivot
    for k, piv in enumerate(echelon):
        for upper in echelon[:k]:
            entry = upper.entries[piv.pivot]
            if entry.degree >= piv.entries[piv.pivot].degree:
                quot = entry // piv.entries[piv.pivot]
                upper.entries = _axpy(upper.entries, quot, piv.entries)
                upper.combination = _axpy(upper.combination, quot, piv.combination)
    return echelon


def reduce_vector(vec, echelon, count):
    """
    Divide ``vec`` by the echelon rows left to right.

    Returns:
        (remainder, witness) where witness is the Q[D]-combination of the
        original rows that was subtracted
    """
    rem = list(vec)
    witness = [PolyV() for _ in range(count)]
    for row in echelon:
        entry = rem[row.pivot]
        if entry.is_zero():
            continue
        quot = entry // row.entries[row.pivot]
        if quot.is_zero():
            continue
        rem = _axpy(rem, quot, row.entries)
        witness = [w + quot * c for w, c in zip(witness, row.combination)]
    return rem, witness

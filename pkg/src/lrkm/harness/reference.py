"""Published reference tables for the Bratu benchmark.

Values are kept exactly as printed.  Every table is sampled at
``x = 0.1 .. 0.9``.  The value tables list the closed-form solution and the
collocation solution for three derivative orders (``m = 20``, ``n = 30``).  The
error tables list absolute errors of the ``alpha = 2`` solution for several
``m``.  The comparison tables add four results from other methods, which are
quoted here and never recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["GRID", "ReferenceTable", "TABLES", "get"]

GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))


@dataclass(frozen=True)
class ReferenceTable:
    """One published table.

    ``kind`` is ``"values"``, ``"errors"`` or ``"compare"``.  ``columns``
    names the data columns (``x`` excluded); ``rows[i]`` belongs to
    ``GRID[i]``.
    """

    table_id: int
    kind: str
    lam: float
    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]
    m_values: tuple[int, ...] = ()
    quoted: tuple[str, ...] = ()

    def column(self, name: str) -> tuple[float, ...]:
        j = self.columns.index(name)
        return tuple(r[j] for r in self.rows)


def _parse(block: str) -> tuple[tuple[float, ...], ...]:
    rows = []
    for line in block.strip().splitlines():
        parts = line.split()
        rows.append(tuple(float(p) for p in parts[1:]))
    return tuple(rows)


_VALUE_COLS = ("exact", "alpha=2", "alpha=1.9", "alpha=1.8")
_ERROR_COLS = tuple(f"m={m}" for m in (10, 12, 14, 16, 18))
_COMPARE_COLS = ("B-Spline", "Laplace", "LGSM", "DM", "L-RKM")

_T1 = """
0.1 0.04984679124541 0.04984679124541 0.053348029010 0.05640455239
0.2 0.08918993462882 0.08918993462882 0.094053979156 0.09778884381
0.3 0.11760909576794 0.11760909576794 0.122561203471 0.12577795186
0.4 0.13479025388418 0.13479025388418 0.139016612388 0.14107528890
0.5 0.14053921440047 0.14053921440047 0.143580804066 0.14424570594
0.6 0.13479025388418 0.13479025388418 0.136494883917 0.13586263427
0.7 0.11760909576794 0.11760909576794 0.118101177356 0.11655270867
0.8 0.08918993462882 0.08918993462882 0.088844712904 0.08700454024
0.9 0.04984679124541 0.04984679124541 0.049263971500 0.04796098207
"""

_T2 = """
0.1 4.59E-10 1.25E-11 3.52E-13 1.01E-14 2.96E-16
0.2 8.17E-10 2.30E-11 6.62E-13 1.93E-14 5.68E-16
0.3 1.18E-9  3.34E-11 9.65E-13 2.82E-14 8.35E-16
0.4 1.53E-9  4.35E-11 1.25E-12 3.69E-14 1.09E-15
0.5 1.86E-9  5.30E-11 1.53E-12 4.51E-14 1.33E-15
0.6 2.17E-9  6.19E-11 1.79E-12 5.28E-14 1.56E-15
0.7 2.46E-9  7.02E-11 2.03E-12 5.99E-14 1.77E-15
0.8 2.72E-9  7.75E-11 2.25E-12 6.63E-14 1.96E-15
0.9 2.90E-9  8.44E-11 2.45E-12 7.22E-14 2.13E-15
"""

_T3 = """
0.1 2.97E-6 1.97E-6 7.50E-7 2.68E-3 5.53E-17
0.2 5.46E-6 3.93E-6 1.01E-6 2.02E-3 1.09E-16
0.3 7.33E-6 5.85E-6 9.04E-7 1.52E-4 1.63E-16
0.4 8.49E-6 7.70E-6 5.23E-7 2.20E-3 2.15E-15
0.5 8.89E-6 9.46E-6 5.06E-9 3.01E-3 2.64E-15
0.6 8.49E-6 1.11E-5 5.13E-7 2.20E-3 3.11E-15
0.7 7.33E-6 1.25E-5 8.94E-7 1.52E-4 3.54E-15
0.8 5.46E-6 1.34E-5 1.00E-6 2.02E-3 3.92E-15
0.9 2.97E-6 1.19E-5 7.41E-7 2.68E-3 4.27E-15
"""

_T4 = """
0.1 0.11441074326774 0.11441074326804 0.12395416270 0.13161211082
0.2 0.20641911648760 0.20641911648819 0.22060766752 0.23047094173
0.3 0.27387931182555 0.27387931182641 0.28927167294 0.29804837485
0.4 0.31508936422566 0.31508936422678 0.32910866272 0.33469946332
0.5 0.32895242134111 0.32895242134245 0.33985942541 0.34125713685
0.6 0.31508936422566 0.31508936422720 0.32203437200 0.31930371842
0.7 0.27387931182555 0.27387931182723 0.27693051224 0.27114363748
0.8 0.20641911648760 0.20641911648939 0.20652983899 0.19963116013
0.9 0.11441074326774 0.11441074326959 0.11332086854 0.10793583205
"""

_T5 = """
0.1 9.65E-8 6.25E-9 4.17E-10 2.84E-11 1.96E-12
0.2 1.76E-7 1.16E-8 7.92E-10 5.44E-11 3.78E-12
0.3 2.53E-7 1.69E-8 1.14E-9  7.91E-11 5.50E-12
0.4 3.24E-7 2.16E-8 1.47E-9  1.01E-10 7.08E-12
0.5 3.86E-7 2.58E-8 1.76E-9  1.21E-10 8.47E-12
0.6 4.37E-7 2.92E-8 1.99E-9  1.38E-10 9.62E-12
0.7 4.76E-7 3.19E-8 2.18E-9  1.50E-10 1.05E-11
0.8 5.02E-7 3.37E-8 2.30E-9  1.59E-10 1.11E-11
0.9 5.09E-7 3.48E-8 2.38E-9  1.64E-10 1.14E-11
"""

_T6 = """
0.1 1.71E-5 2.12E-3 4.03E-6 1.52E-2 4.08E-13
0.2 3.25E-5 4.20E-3 5.70E-6 1.46E-2 8.04E-13
0.3 4.48E-5 6.18E-3 5.22E-6 5.88E-3 1.18E-12
0.4 5.28E-5 8.00E-3 3.07E-6 3.24E-3 1.52E-12
0.5 5.26E-5 9.59E-3 1.45E-8 6.98E-3 1.83E-12
0.6 5.28E-5 1.09E-2 3.04E-6 3.24E-3 2.08E-12
0.7 4.48E-5 1.19E-2 5.19E-6 5.88E-3 2.28E-12
0.8 3.25E-5 1.23E-2 5.67E-6 1.46E-2 2.42E-12
0.9 1.71E-5 1.08E-2 4.01E-6 1.52E-2 2.50E-12
"""

_T7 = """
0.1 0.21577498476753 0.21577498329811 0.24085457687 0.26065428735
0.2 0.39431958747803 0.39431958460834 0.43526223628 0.46414428666
0.3 0.52843643955821 0.52843643546802 0.57680617280 0.60602026500
0.4 0.61182920818459 0.61182920316127 0.65968880520 0.68206752260
0.5 0.64014669604146 0.64014669046258 0.68090952720 0.69191607740
0.6 0.61182920818459 0.61182920247466 0.64127386680 0.63986648210
0.7 0.52843643955821 0.52843643413164 0.54537595346 0.53412579803
0.8 0.39431958747803 0.39431958268710 0.40065374951 0.38508131538
0.9 0.21577498476753 0.21577498087398 0.21597352866 0.20346054571
"""

_T8 = """
0.1 8.91E-6 1.14E-6 1.52E-7 1.97E-8 3.42E-9
0.2 1.67E-5 2.19E-6 2.93E-7 3.81E-8 6.63E-9
0.3 2.39E-5 3.13E-6 4.20E-7 5.49E-8 9.49E-9
0.4 2.99E-5 3.92E-6 5.27E-7 6.89E-8 1.17E-8
0.5 3.43E-5 4.50E-6 6.04E-7 7.93E-8 1.33E-8
0.6 3.67E-5 4.82E-6 6.47E-7 8.52E-8 1.40E-8
0.7 3.71E-5 4.87E-6 6.54E-7 8.67E-8 1.38E-8
0.8 3.56E-5 4.68E-6 6.28E-7 8.38E-8 1.28E-8
0.9 3.21E-5 4.29E-6 5.77E-7 7.74E-8 1.32E-8
"""

_M_ERR = (10, 12, 14, 16, 18)
_QUOTED = ("B-Spline", "Laplace", "LGSM", "DM")

TABLES: dict[int, ReferenceTable] = {
    1: ReferenceTable(1, "values", 1.0, _VALUE_COLS, _parse(_T1), (20,)),
    2: ReferenceTable(2, "errors", 1.0, _ERROR_COLS, _parse(_T2), _M_ERR),
    3: ReferenceTable(3, "compare", 1.0, _COMPARE_COLS, _parse(_T3), (20,), _QUOTED),
    4: ReferenceTable(4, "values", 2.0, _VALUE_COLS, _parse(_T4), (20,)),
    5: ReferenceTable(5, "errors", 2.0, _ERROR_COLS, _parse(_T5), _M_ERR),
    6: ReferenceTable(6, "compare", 2.0, _COMPARE_COLS, _parse(_T6), (20,), _QUOTED),
    7: ReferenceTable(7, "values", 3.0, _VALUE_COLS, _parse(_T7), (20,)),
    8: ReferenceTable(8, "errors", 3.0, _ERROR_COLS, _parse(_T8), _M_ERR),
}


def get(table_id: int) -> ReferenceTable:
    try:
        return TABLES[int(table_id)]
    except KeyError:
        raise ValueError(f"no reference table {table_id}; choose 1..8") from None

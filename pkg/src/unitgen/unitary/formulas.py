"""Closed-form dimension counts for the non-generating locus and its pieces."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field

__all__ = ["DimRecord", "dims", "OrbitDatum", "orbit_data", "general_dim_Zr", "components"]


def components(n: int, r: int, characteristic: int = 0) -> list[str]:
    """Labels of the irreducible components of the non-generating locus."""
    labels = [f"X{i}" for i in range(1, n)] + ["Ybar"]
    if n % 2 == 0 and (n, r) != (2, 1) and characteristic != 2:
        labels.append("Yprimebar")
    return labels


@dataclass
class DimRecord:
    n: int
    r: int
    characteristic: int
    ambient: int
    dim_Z: int
    c_A: int
    dim_X: dict
    dim_Ybar: int
    dim_Ybar_exact: bool
    dim_Yprimebar: int | None
    s: dict
    stab_AV: dict
    stab_PO: int
    stab_PSp: int | None
    dim_G: int
    components: list = dc_field(default_factory=list)

    def to_dict(self):
        d = asdict(self)
        for key in ("dim_X", "s", "stab_AV"):
            d[key] = {str(i): v for i, v in d[key].items()}
        return d


def dims(n: int, r: int, characteristic: int = 0) -> DimRecord:
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    m = n * n
    ambient = 2 * r * m
    dim_Z = r if n == 1 else ambient - (2 * r - 1) * (n - 1)
    even = n % 2 == 0
    return DimRecord(
        n=n, r=r, characteristic=characteristic,
        ambient=ambient,
        dim_Z=dim_Z,
        c_A=ambient - dim_Z,
        dim_X={i: ambient - (2 * r - 1) * (n - i) * i for i in range(1, n)},
        dim_Ybar=(r + 1) * m - n * (n - 1) // 2 - 1,
        dim_Ybar_exact=characteristic != 2,
        dim_Yprimebar=(r + 1) * m - n * (n + 1) // 2 - 1 if even else None,
        s={i: (2 * r - 1) * (m - i * (n - i)) + 1 for i in range(1, n)},
        stab_AV={i: m - i * (n - i) - 1 for i in range(1, n)},
        stab_PO=n * (n - 1) // 2,
        stab_PSp=n * (n + 1) // 2 if even else None,
        dim_G=m - 1,
        components=components(n, r, characteristic),
    )


@dataclass(frozen=True)
class OrbitDatum:
    """A conjugacy class of maximal subalgebras: dimension, stabilizer
    dimension and the least number of generators of a representative."""

    label: str
    dim_subalgebra: int
    dim_stabilizer: int
    min_generators: int

    def generated_by_r(self, r: int) -> bool:
        return r >= self.min_generators


def orbit_data(n: int) -> list[OrbitDatum]:
    """Representatives A_{V(i)}, B_[I] and (n even) B_[Omega]."""
    m = n * n
    if n == 1:
        return [OrbitDatum("B_I", 1, 0, 0)]
    data = [OrbitDatum(f"A_V({i})", 2 * (m - i * (n - i)), m - i * (n - i) - 1, 1)
            for i in range(1, n)]
    data.append(OrbitDatum("B_I", m, n * (n - 1) // 2, 1))
    if n % 2 == 0:
        data.append(OrbitDatum("B_Omega", m, n * (n + 1) // 2, 2 if n == 2 else 1))
    return data


def general_dim_Zr(dim_G: int, data: list[OrbitDatum], r: int) -> tuple[int, bool]:
    """dim_G + max(r dim A_i - dim H_i); exact when a maximizer is r-generated."""
    if not data:
        raise ValueError("need at least one orbit datum")
    values = [r * o.dim_subalgebra - o.dim_stabilizer for o in data]
    top = max(values)
    exact = any(v == top and o.generated_by_r(r) for v, o in zip(values, data))
    return dim_G + top, exact

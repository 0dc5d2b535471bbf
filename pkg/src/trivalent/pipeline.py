"""Memoised builders for the objects of level k: G_k, X_k, T_k, O_k, faces, duals."""

from __future__ import annotations

from functools import lru_cache

from .graphs.cayley import cayley, cayley_from_tables, delta_y, relator_triangles
from .group import pcp as P
from .group.pquotient import DEFAULT_MAX_GENS, pquotient_tower, verify_pcp
from .group.words import g_presentation

_tower: list[P.PcPresentation] = []
_settings = {"cache": None, "enum_cap": P.DEFAULT_ENUM_CAP, "max_gens": DEFAULT_MAX_GENS}


def configure(cache=None, enum_cap: int | None = None, max_gens: int | None = None) -> None:
    """Attach an on-disk cache and set resource caps; clears memoised objects."""
    clear()
    _settings["cache"] = cache
    if enum_cap is not None:
        _settings["enum_cap"] = enum_cap
    if max_gens is not None:
        _settings["max_gens"] = max_gens


def _group_key(k: int) -> str:
    from .cache import input_hash

    return input_hash("pcp", k=k, presentation=[str(r) for r in g_presentation().relators])


def _load_tower(k: int) -> list[P.PcPresentation] | None:
    cache = _settings["cache"]
    if cache is None:
        return None
    out = []
    for j in range(1, k + 1):
        text = cache.get_text(_group_key(j))
        if text is None:
            return None
        try:
            pcp = P.PcPresentation.from_json(text)
            verify_pcp(g_presentation(), pcp)
        except Exception:
            return None
        out.append(pcp)
    return out


def group(k: int) -> P.PcPresentation:
    """G_k, extending the shared tower as needed."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(_tower) < k:
        loaded = _load_tower(k)
        if loaded is None:
            loaded = pquotient_tower(g_presentation(), k, max_gens=_settings["max_gens"])
            if _settings["cache"] is not None:
                for j, pcp in enumerate(loaded, start=1):
                    _settings["cache"].put_text(_group_key(j), pcp.to_json())
        _tower[:] = loaded
    return _tower[k - 1]


def group_key(k: int) -> str:
    return _group_key(k)


def tower(kmax: int) -> list[P.PcPresentation]:
    group(kmax)
    return _tower[:kmax]


@lru_cache(maxsize=None)
def cayley_graph(k: int):
    pcp = group(k)
    P.enumerate_elements(pcp, _settings["enum_cap"])
    cache = _settings["cache"]
    key = _group_key(k) + "-X"
    if cache is not None:
        arrays = cache.get_arrays(key)
        if arrays is not None and arrays["tables"].shape == (pcp.order, 6):
            g = cayley_from_tables(list(arrays["tables"].T), P.GENERATOR_LABELS, (1, 0, 3, 2, 5, 4), name=f"X_{k}")
            g.meta["k"] = k
            return g
    g = cayley(pcp, cap=_settings["enum_cap"])
    if cache is not None:
        cache.put_arrays(key, {"tables": g.meta["tables"]})
    return g


@lru_cache(maxsize=None)
def triangles(k: int):
    return relator_triangles(cayley_graph(k))


@lru_cache(maxsize=None)
def tk(k: int):
    return delta_y(cayley_graph(k), triangles(k), name=f"T_{k}")


@lru_cache(maxsize=None)
def oriented(k: int):
    from .surface.maps import orient_Tk

    return orient_Tk(tk(k))


@lru_cache(maxsize=None)
def faces(k: int):
    from .surface.maps import trace_faces

    return trace_faces(oriented(k), "left")


@lru_cache(maxsize=None)
def tk_dual(k: int):
    from .surface.maps import dual

    return dual(faces(k), tk(k), name=f"T_{k}*")


def clear() -> None:
    _tower.clear()
    for f in (cayley_graph, triangles, tk, oriented, faces, tk_dual):
        f.cache_clear()

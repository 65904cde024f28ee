"""Shared construction data for the tests (loaded from the bundled fixtures)."""

from darbouxkit.constructions import load_fixture, stage_config


def stage(fixture_id: str, name: str | None = None):
    fx = load_fixture(fixture_id)
    st = fx["stages"][0] if name is None else next(s for s in fx["stages"] if s["name"] == name)
    return stage_config(st), st


def groups(cfg):
    from darbouxkit.poly import poly_product

    return [poly_product([cfg.curves[n] for n in members], cfg.field) for members in cfg.groups.values()]


def union(cfg):
    from darbouxkit.poly import poly_product

    return poly_product(list(cfg.curves.values()), cfg.field)

"""Seeded random instances and documents for property checks and batch runs."""

from __future__ import annotations

import math
from typing import Iterator, List, Optional

import numpy as np

from .docformat import ProblemDocument
from .geometry import Configuration, ProblemInstance, canonical_instance
from .proximity import DSubcase, classify_endpoints, in_forward_region
from .region import OmegaRegion, construct_region


def random_configuration(rng: np.random.Generator, box: float = 10.0) -> Configuration:
    px, py = rng.uniform(-box, box, size=2)
    return Configuration.from_angle(float(px), float(py), float(rng.uniform(-math.pi, math.pi)))


def random_canonical_instance(rng: np.random.Generator, reach: float = 6.0) -> ProblemInstance:
    y = Configuration.from_angle(float(rng.uniform(-reach, reach)), float(rng.uniform(-reach, reach)),
                                 float(rng.uniform(-math.pi, math.pi)))
    if y.position == (0.0, 0.0) and y.heading == (1.0, 0.0):
        y = Configuration.from_angle(1.0, 0.0, 0.0)
    return canonical_instance(y)


def random_region(rng: np.random.Generator, forward: bool = False, tries: int = 100000) -> OmegaRegion:
    """Rejection-sample a canonical instance whose region exists.

    Any instance that carries a region has ``y`` within distance 4 of ``x``,
    so candidates are drawn from the box [-1, 4] x [-3, 3].
    """
    for _ in range(tries):
        px = float(rng.uniform(-1.0, 4.0))
        py = float(rng.uniform(-3.0, 3.0))
        a = float(rng.uniform(-math.pi, math.pi))
        inst = canonical_instance(Configuration.from_angle(px, py, a))
        if forward and not in_forward_region(inst):
            continue
        region = construct_region(inst)
        if region is not None:
            return region
    raise RuntimeError("no region found; the sampling box is wrong")


def random_regions(seed: int, n: int, forward: bool = False) -> Iterator[OmegaRegion]:
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield random_region(rng, forward)


def random_document(rng: np.random.Generator, index: int = 0) -> ProblemDocument:
    """A document mixing near and far endpoints, with a plan and gradient block."""
    near = rng.random() < 0.5
    reach = 3.0 if near else 8.0
    px, py = (round(float(v), 6) for v in rng.uniform(-reach, reach, size=2))
    heading = round(float(rng.uniform(-180.0, 180.0)), 4)
    if px == 0.0 and py == 0.0:
        px = 1.0
    kappa = float(rng.choice([0.5, 1.0, 2.0]))
    required = round(float(rng.uniform(0.0, 30.0)) / kappa, 6)
    drop = round(float(rng.uniform(1.0, 10.0)), 6)
    grad = float(rng.choice([1 / 7, 1 / 8, 1 / 9]))
    return ProblemDocument((0.0, 0.0, 0.0), (px, py, heading), kappa, required, drop, grad,
                           name=f"generated-{index:04d}")


def random_documents(seed: int, n: int) -> List[ProblemDocument]:
    rng = np.random.default_rng(seed)
    return [random_document(rng, i) for i in range(n)]


def carries_region(inst: ProblemInstance) -> Optional[OmegaRegion]:
    prox = classify_endpoints(inst)
    return construct_region(inst) if prox.d_subcase is DSubcase.CARRIES_OMEGA else None

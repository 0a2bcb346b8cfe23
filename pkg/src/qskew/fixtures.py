"""Stored problem instances with reference values.

The three reproduction fixtures are the concrete counterexample and equality
instances quoted by the acceptance gate; the witness instances below them
are frozen seeded draws used to pin qualitative claims (a positive diagnostic
difference, and the two gamma=1/2 correlation measures genuinely differing).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import DensityMatrix, Observable, PAULI_X, PAULI_Y

MATRIX_A = np.array([[2.0, 2.0 - 1.0j], [2.0 + 1.0j, 1.0]])
MATRIX_B = np.array([[2.0, 1.0j], [-1.0j, 1.0]])


@dataclass(frozen=True)
class Fixture:
    """One stored (rho, A, B, params) instance with its reference margin."""

    name: str
    inequality_id: str
    rho: DensityMatrix
    a: Observable
    b: Observable
    alpha: Optional[float]
    reference: float
    tolerance: float
    note: str


FIXTURES: dict[str, Fixture] = {}


def _add(fx: Fixture) -> None:
    FIXTURES[fx.name] = fx


_add(
    Fixture(
        name="remark_2_1",
        inequality_id="THM2",
        rho=DensityMatrix(np.diag([1.0 / 3.0, 2.0 / 3.0]).astype(complex)),
        a=Observable(MATRIX_A),
        b=Observable(MATRIX_B),
        alpha=0.1,
        reference=-0.28332,
        tolerance=5e-5,
        note="the alpha in [1/2,1] bound fails below 1/2: margin is negative at alpha=0.1",
    )
)

_add(
    Fixture(
        name="remark_2_2",
        inequality_id="ORD22",
        rho=DensityMatrix(np.array([[2.0, 3.0], [3.0, 5.0]]) / 7.0 + 0.0j),
        a=Observable(MATRIX_A),
        b=Observable(MATRIX_B),
        alpha=2.0 / 3.0,
        reference=-0.0548142,
        tolerance=5e-7,
        note="(Re Corr_a)^2 does not dominate (Im Tr[rho^a A rho^(1-a) B])^2",
    )
)

_add(
    Fixture(
        name="equality_wy",
        inequality_id="THM2",
        rho=DensityMatrix(np.diag([1.0 / 3.0, 2.0 / 3.0]).astype(complex)),
        a=Observable(PAULI_X),
        b=Observable(PAULI_Y),
        alpha=0.5,
        reference=0.0,
        tolerance=1e-12,
        note="equality instance: U = 1/3 for both observables and |Corr|^2 = 1/9",
    )
)

REPRODUCTION_IDS = tuple(FIXTURES)


def get_fixture(name: str) -> Fixture:
    key = name.strip().lower()
    if key not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[key]


def _cm(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


# Frozen seeded draw: the two gamma=1/2 correlation measures differ here by
# about 0.48, exercising the "not equal in general" claim deterministically.
WITNESS_CORR_DIFFER_ALPHA = 0.3
WITNESS_CORR_DIFFER_RHO = DensityMatrix(_cm([
    [[0.9211545222091237, 0.0], [-0.1272415134810896, 0.13513019092249726]],
    [[-0.1272415134810896, -0.13513019092249726], [0.07884547779087636, 0.0]],
]))
WITNESS_CORR_DIFFER_A = Observable(_cm([
    [[1.1512532953120054, 0.0], [0.8969609411188685, -0.017160703343811257]],
    [[0.8969609411188685, 0.017160703343811257], [0.4149970811173746, 0.0]],
]))
WITNESS_CORR_DIFFER_B = Observable(_cm([
    [[0.37237793297202304, 0.0], [-0.6654976136480105, 0.6420401068427495]],
    [[-0.6654976136480105, -0.6420401068427495], [0.46765497220557445, 0.0]],
]))

# Frozen seeded draw with a clearly positive diagnostic difference (~0.53),
# the counterpart of remark_2_2's negative one: no ordering holds.
WITNESS_ORD22_POSITIVE_ALPHA = 2.0 / 3.0
WITNESS_ORD22_POSITIVE_RHO = DensityMatrix(_cm([
    [[0.5338101844527259, 0.0], [-0.3728008983051445, -0.28423735294075425]],
    [[-0.3728008983051445, 0.28423735294075425], [0.46618981554727423, 0.0]],
]))
WITNESS_ORD22_POSITIVE_A = Observable(_cm([
    [[0.7084677797517336, 0.0], [0.08025889452886509, -0.2774905664539027]],
    [[0.08025889452886509, 0.2774905664539027], [-1.8810736958030185, 0.0]],
]))
WITNESS_ORD22_POSITIVE_B = Observable(_cm([
    [[-1.495358413814947, 0.0], [-0.8000206919544504, -0.15224519098906805]],
    [[-0.8000206919544504, 0.15224519098906805], [0.14574404370030905, 0.0]],
]))

"""Borrowed context diagrams: minimal completions ``a ; f = l ; c`` of a span
of cospans ``a, l`` with a common inner interface."""
from __future__ import annotations

from dataclasses import dataclass

from .adhesive import JointlyEpiSquare, jointly_epi_squares, pullback, pushout_complements
from .cospan import Cospan
from .graph import Graph

__all__ = ["BCDiagram", "borrowed_context_diagrams"]


@dataclass(frozen=True)
class BCDiagram:
    """One borrowed context diagram for ``a: D -> J`` and ``l: D -> I``.

    ``borrowed: J -> K`` and ``context: I -> K`` satisfy
    ``a ; borrowed = l ; context`` and ``overlap`` is the middle of that
    composite."""

    agent: Cospan
    lhs: Cospan
    square: JointlyEpiSquare
    borrowed: Cospan
    context: Cospan

    @property
    def overlap(self) -> Graph:
        return self.square.object

    @property
    def interface(self) -> Graph:
        return self.borrowed.outer


def borrowed_context_diagrams(a: Cospan, l: Cospan) -> list[BCDiagram]:
    """Enumerate the borrowed context diagrams of ``a`` and ``l``.

    One diagram per jointly epi overlap of the two middles over the common
    inner interface and per choice of pushout complement (complements are
    unique when the right legs are injective)."""
    if a.inner != l.inner:
        raise ValueError("agent and left-hand side must share their inner interface")
    out = []
    for sq in jointly_epi_squares(l.left_leg, a.left_leg):
        # G -> G+ is sq.bottom, L -> G+ is sq.right
        for fpc in pushout_complements(a.right_leg, sq.bottom):
            for cpc in pushout_complements(l.right_leg, sq.right):
                pb = pullback(fpc.right_leg, cpc.right_leg)
                borrowed = Cospan(fpc.left_leg, pb.left_leg)
                context = Cospan(cpc.left_leg, pb.right_leg)
                out.append(BCDiagram(a, l, sq, borrowed, context))
    return out

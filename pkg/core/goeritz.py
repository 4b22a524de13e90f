"""
Goeritz matrices, determinants and homology of double branched covers
"""

import logging
from collections import deque
from typing import Dict, List, Tuple, Union

from core.errors import InvalidDiagramError
from core.links import DBCReference, LinkDiagram, split_pieces
from core.zmod import IntMatrix, ZdModuleStructure, _check_modulus, cokernel_mod

logger = logging.getLogger(__name__)

Corner = Tuple[int, int]  # (crossing, slot): the region counterclockwise from that slot


def _faces(L: LinkDiagram) -> Tuple[List[List[Corner]], Dict[Corner, int]]:
    """Regions of a connected diagram, each as its list of crossing corners."""
    ends: Dict[int, List[Tuple[int, int]]] = {}
    for k, crossing in enumerate(L.crossings):
        for slot, arc in enumerate(crossing):
            ends.setdefault(arc, []).append((k, slot))

    def other_end(k: int, slot: int) -> Tuple[int, int]:
        first, second = ends[L.crossings[k][slot]]
        return second if first == (k, slot) else first

    faces: List[List[Corner]] = []
    face_of: Dict[Corner, int] = {}
    for k in range(L.n_crossings):
        for j in range(4):
            if (k, j) in face_of:
                continue
            face: List[Corner] = []
            corner = (k, j)
            while corner not in face_of:
                face_of[corner] = len(faces)
                face.append(corner)
                corner = other_end(corner[0], (corner[1] + 1) % 4)
            faces.append(face)

    if len(faces) != L.n_crossings + 2:
        raise InvalidDiagramError(
            f"diagram has {len(faces)} regions but {L.n_crossings} crossings; it is not a connected planar diagram")
    return faces, face_of


def _checkerboard(L: LinkDiagram, faces: List[List[Corner]], face_of: Dict[Corner, int]) -> List[int]:
    """Colour regions 0/1 so that regions meeting across an arc differ; region 0 gets colour 0."""
    neighbours: Dict[int, set] = {i: set() for i in range(len(faces))}
    for k in range(L.n_crossings):
        for j in range(4):
            f, g = face_of[(k, j)], face_of[(k, (j + 1) % 4)]
            neighbours[f].add(g)
            neighbours[g].add(f)

    colour = [-1] * len(faces)
    colour[0] = 0
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g in neighbours[f]:
            if colour[g] == -1:
                colour[g] = 1 - colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                raise InvalidDiagramError("regions cannot be checkerboard coloured; the PD code is not planar")
    return colour


def goeritz_matrix(L: LinkDiagram) -> IntMatrix:
    """
    Reduced Goeritz matrix of a connected diagram with at least one crossing.

    White regions are those coloured like the region at corner 0 of crossing 0. A crossing
    whose white corners are {0, 2} contributes η = +1 and one with {1, 3} contributes
    η = −1; G_ij = −Σ η over crossings joining white regions i ≠ j, the diagonal makes
    rows sum to zero, and the first white region is deleted.

    Raises:
        InvalidDiagramError: for an empty or split diagram
    """
    if L.n_crossings == 0:
        raise InvalidDiagramError("Goeritz matrix needs at least one crossing")
    if len(split_pieces(L)) > 1:
        raise InvalidDiagramError("Goeritz matrix needs a connected (non-split) diagram")

    faces, face_of = _faces(L)
    colour = _checkerboard(L, faces, face_of)
    white = [i for i, c in enumerate(colour) if c == 0]
    index = {f: i for i, f in enumerate(white)}
    m = len(white)
    G = [[0] * m for _ in range(m)]
    for k in range(L.n_crossings):
        if colour[face_of[(k, 0)]] == 0:
            eta, corners = 1, (0, 2)
        else:
            eta, corners = -1, (1, 3)
        f, g = index[face_of[(k, corners[0])]], index[face_of[(k, corners[1])]]
        if f == g:
            continue
        G[f][g] -= eta
        G[g][f] -= eta
        G[f][f] += eta
        G[g][g] += eta

    reduced = [row[1:] for row in G[1:]]
    return IntMatrix.from_rows(reduced, cols=m - 1)


def _diagram(source: Union[LinkDiagram, DBCReference]) -> LinkDiagram:
    return source.link if isinstance(source, DBCReference) else source


def determinant(source: Union[LinkDiagram, DBCReference]) -> int:
    """|det| of the Goeritz matrix: 1 for the unknot, 0 for split links."""
    L = _diagram(source)
    pieces = split_pieces(L)
    if len(pieces) > 1:
        return 0
    if L.n_crossings == 0:
        return 1
    return abs(goeritz_matrix(L).determinant())


def dbc_homology(source: Union[LinkDiagram, DBCReference], d: int) -> ZdModuleStructure:
    """H_1(Σ_2(L); Z_d); a split link adds one Z_d per extra piece."""
    _check_modulus(d)
    L = _diagram(source)
    pieces = split_pieces(L)
    result = ZdModuleStructure.free(len(pieces) - 1, d)
    for piece in pieces:
        if piece.n_crossings:
            result = result.direct_sum(cokernel_mod(goeritz_matrix(piece), d))
    logger.debug(f"H_1(Σ_2({L}); Z_{d}) = {result}")
    return result


def is_homology_sphere(source: Union[LinkDiagram, DBCReference]) -> bool:
    """Σ_2(L) is a Z-homology sphere exactly when det(L) = 1."""
    return determinant(source) == 1

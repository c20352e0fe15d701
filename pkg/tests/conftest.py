import random

import pytest

from hanoilab.core import FLOOR, Move, MoveSequence, TripleMove, apply, initial_state
from tests.oracle import legal_moves

F = FLOOR

# The four known 7-move tear-down phases for five disks, in the
# disk-relative notation; golden fixtures for decode/mirror/enumeration.
REFERENCE_PHASES_N5 = [
    (
        TripleMove(1, 2, F), TripleMove(2, 3, F), TripleMove(1, F, 2),
        TripleMove(3, 4, F), TripleMove(4, 5, F), TripleMove(3, F, 4),
        TripleMove(5, F, F),
    ),
    (
        TripleMove(1, 2, F), TripleMove(2, 3, F), TripleMove(3, 4, F),
        TripleMove(1, F, 3), TripleMove(4, 5, F), TripleMove(2, F, 4),
        TripleMove(5, F, F),
    ),
    (
        TripleMove(1, 2, F), TripleMove(2, 3, F), TripleMove(3, 4, F),
        TripleMove(2, F, 3), TripleMove(4, 5, F), TripleMove(1, F, 4),
        TripleMove(5, F, F),
    ),
    # The fourth phase names the destination stack by its bottom disk
    # (1 lands on the stack whose bottom is 3, on top of 2).
    (
        TripleMove(1, 2, F), TripleMove(2, 3, F), TripleMove(3, 4, F),
        TripleMove(2, F, 3), TripleMove(1, F, 3), TripleMove(4, 5, F),
        TripleMove(5, F, F),
    ),
]


def random_walk(rng: random.Random, n: int, k: int, length: int, source: int = 0) -> MoveSequence:
    """Random legal sequence built by stepping uniformly chosen legal moves."""
    state = initial_state(n, k, source)
    moves = []
    for _ in range(length):
        options = legal_moves(state)
        if not options:
            break
        move = rng.choice(options)
        moves.append(move)
        state = apply(state, move)
    return MoveSequence(n=n, k=k, source=source, moves=tuple(moves))


@pytest.fixture
def reference_phases():
    return REFERENCE_PHASES_N5

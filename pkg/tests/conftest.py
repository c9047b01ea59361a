"""Shared fixtures: the worked diagrams used across the test modules.

The JSON documents here are the small library of curves with known basis
values. Tests that need a "random" diagram use the generator in
``g2skein.oracle`` instead of inventing encodings by hand.
"""

import json

import pytest

from g2skein import parse_diagram

# Single component winding once around each handle, crossing-free. Resolves
# to -t^-2 xz - t^-4 y.
Y_NEG_DOC = {
    "components": [
        {"E": ["O1", "U1", "O2", "U2"], "I": [2, 1, 3, 4], "Q": [4, 3, 4, 5]}
    ],
    "U": {},
}

# Mirror curve of Y_NEG_DOC: same handles, opposite pass order. Resolves to
# -t^2 xz - t^4 y.
Y_POS_DOC = {
    "components": [
        {"E": ["O1", "U2", "O2", "U1"], "I": [1, 3, 4, 2], "Q": [3, 4, 5, 4]}
    ],
    "U": {},
}

UNKNOT_DOC = {"components": [{"E": [], "I": [], "Q": []}], "U": {}}

KINK_POS_DOC = {
    "components": [{"E": ["X+1", "X-1"], "I": [1, 1], "Q": [0, 0]}],
    "U": {"1": 1},
}

KINK_NEG_DOC = {
    "components": [{"E": ["X+1", "X-1"], "I": [1, 1], "Q": [0, 0]}],
    "U": {"1": -1},
}

# One component, two crossings, passes over both handles.
TWO_CROSSING_DOC = {
    "components": [
        {
            "E": ["O1", "X-1", "O2", "U2", "X-2", "O2", "U2", "X+2", "X+1", "U1"],
            "I": [1, 8, 6, 5, 7, 3, 4, 7, 8, 2],
            "Q": [3, 0, 4, 5, 0, 4, 5, 0, 0, 4],
        }
    ],
    "U": {"1": -1, "2": 1},
}

# Two linked components, three crossings.
TWO_COMPONENT_DOC = {
    "components": [
        {
            "E": ["U1", "O1", "U1", "X-2", "X+3", "U1", "U1", "O1"],
            "I": [1, 2, 3, 9, 15, 4, 7, 8],
            "Q": [3, 4, 3, 0, 0, 4, 3, 4],
        },
        {
            "E": ["O1", "X+1", "U2", "O2", "U2", "O2", "X+2", "X-3", "X-1", "U1"],
            "I": [5, 14, 13, 12, 11, 10, 9, 15, 14, 6],
            "Q": [3, 0, 4, 5, 4, 5, 0, 0, 0, 4],
        },
    ],
    "U": {"1": 1, "2": -1, "3": 1},
}


def doc_text(doc) -> str:
    return json.dumps(doc)


@pytest.fixture
def y_neg():
    return parse_diagram(doc_text(Y_NEG_DOC))


@pytest.fixture
def y_pos():
    return parse_diagram(doc_text(Y_POS_DOC))


@pytest.fixture
def unknot():
    return parse_diagram(doc_text(UNKNOT_DOC))


@pytest.fixture
def kink_pos():
    return parse_diagram(doc_text(KINK_POS_DOC))


@pytest.fixture
def kink_neg():
    return parse_diagram(doc_text(KINK_NEG_DOC))


@pytest.fixture
def two_crossing():
    return parse_diagram(doc_text(TWO_CROSSING_DOC))


@pytest.fixture
def two_component():
    return parse_diagram(doc_text(TWO_COMPONENT_DOC))

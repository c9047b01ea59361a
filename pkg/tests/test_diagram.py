"""Parsing, validation, and the symmetry helpers on encoded diagrams."""

import dataclasses
import json

import pytest

from g2skein import (
    SkeinFormatError,
    SkeinValidationError,
    canonical_form,
    parse_diagram,
    serialize_diagram,
    validate,
)
from g2skein.diagram import (
    Component,
    SkeinDiagram,
    dedup_key,
    relabel_heights,
    reverse_component,
    rotate_component,
)

from conftest import TWO_COMPONENT_DOC, TWO_CROSSING_DOC, doc_text


def mk(*comps, signs=None):
    """Build a diagram without the parse-time validation gate."""
    from g2skein.diagram import parse_token

    cs = [
        Component(tuple(parse_token(t) for t in e), tuple(i), tuple(q))
        for e, i, q in comps
    ]
    return SkeinDiagram.make(cs, signs or {})


def test_round_trip_is_byte_exact(two_crossing, two_component):
    assert serialize_diagram(two_crossing) == doc_text(TWO_CROSSING_DOC)
    assert serialize_diagram(two_component) == doc_text(TWO_COMPONENT_DOC)
    again = parse_diagram(serialize_diagram(two_component))
    assert serialize_diagram(again) == serialize_diagram(two_component)


def test_fixtures_validate_clean(y_neg, y_pos, unknot, kink_pos, two_crossing, two_component):
    for d in (y_neg, y_pos, unknot, kink_pos, two_crossing, two_component):
        assert validate(d) == []


def test_parse_rejects_garbage():
    with pytest.raises(SkeinFormatError):
        parse_diagram("not json at all")
    with pytest.raises(SkeinFormatError):
        parse_diagram(json.dumps({"components": [{"E": ["Z9"], "I": [1], "Q": [3]}], "U": {}}))


def test_parse_runs_validation():
    doc = {"components": [{"E": ["X+1"], "I": [1], "Q": [0]}], "U": {"1": 1}}
    with pytest.raises(SkeinValidationError) as exc:
        parse_diagram(json.dumps(doc))
    assert exc.value.violations == ["unpaired self-crossing 1"]
    with pytest.raises(SkeinValidationError):
        parse_diagram(json.dumps({"components": [{"E": ["O1"], "I": [1, 2], "Q": [3]}], "U": {}}))


def test_zero_heights_only_for_crossings_mid_pipeline():
    d = mk((["X+1", "X-1"], [0, 0], [0, 0]), signs={1: 1})
    assert validate(d, allow_zero_heights=True) == []
    problems = validate(d)
    assert len(problems) == 2 and all("zero height" in p for p in problems)
    # the relaxation never extends to strand passes
    d2 = mk((["O1"], [0], [3]))
    assert any("zero height" in p for p in validate(d2, allow_zero_heights=True))


def test_validate_unpaired_crossing():
    d = mk((["X+1"], [1], [0]), signs={1: 1})
    assert any("unpaired" in p for p in validate(d))


def test_validate_branch_height_mismatch():
    d = mk((["X+1", "X-1"], [1, 2], [0, 0]), signs={1: 1})
    assert any("height mismatch" in p for p in validate(d))


def test_validate_height_collisions():
    d = mk((["O1", "U1"], [1, 1], [3, 4]))
    assert any("collision" in p for p in validate(d))
    # two different crossings may not share a height either
    d2 = mk((["X+1", "X-1", "X+2", "X-2"], [1, 1, 1, 1], [0, 0, 0, 0]), signs={1: 1, 2: 1})
    assert any("collision" in p for p in validate(d2))


def test_validate_sign_table():
    d = mk((["X+1", "X-1"], [1, 1], [0, 0]))
    assert any("sign table" in p for p in validate(d))
    d2 = mk((["O1", "U1"], [1, 2], [3, 4]), signs={7: 1})
    assert any("sign table" in p for p in validate(d2))


def test_validate_orientation_codes():
    d = mk((["O1", "U1"], [1, 2], [5, 4]))
    assert any("orientation" in p for p in validate(d))
    d2 = mk((["X+1", "X-1"], [1, 1], [3, 0]), signs={1: 1})
    assert any("orientation" in p for p in validate(d2))


def test_bad_sign_value_reported():
    d = mk((["X+1", "X-1"], [1, 1], [0, 0]), signs={1: 2})
    assert validate(d) == ["bad sign value for crossing 1"]


def test_rotate_component_shifts_start():
    d = parse_diagram(json.dumps({"components": [{"E": ["O1", "U1"], "I": [1, 2], "Q": [3, 4]}], "U": {}}))
    r = rotate_component(d.components[0], 1)
    rd = SkeinDiagram.make([r], {})
    assert json.loads(serialize_diagram(rd))["components"][0] == {
        "E": ["U1", "O1"],
        "I": [2, 1],
        "Q": [4, 3],
    }


def test_rotate_full_cycle_is_identity(two_crossing):
    c = two_crossing.components[0]
    assert rotate_component(c, len(c.entries)) == c
    assert rotate_component(c, 0) == c


def test_rotation_preserves_dedup_key(two_crossing, two_component):
    for d in (two_crossing, two_component):
        for k in range(1, len(d.components[0].entries)):
            rot = SkeinDiagram.make(
                [rotate_component(d.components[0], k), *d.components[1:]], d.signs()
            )
            assert validate(rot) == []
            assert dedup_key(rot) == dedup_key(d)


def test_reverse_component_is_involutive(two_crossing, y_neg):
    for d in (two_crossing, y_neg):
        c = d.components[0]
        assert reverse_component(reverse_component(c)) == c


def test_relabel_heights_keeps_key(two_crossing):
    used = sorted({h for c in two_crossing.components for h in c.heights})
    shifted = relabel_heights(two_crossing, {h: h + 5 for h in used})
    assert validate(shifted) == []
    assert dedup_key(shifted) == dedup_key(two_crossing)
    gappy = relabel_heights(two_crossing, {h: 10 * h for h in used})
    assert dedup_key(gappy) == dedup_key(two_crossing)


def test_relabel_heights_rejects_bad_mappings(two_crossing):
    used = sorted({h for c in two_crossing.components for h in c.heights})
    with pytest.raises(SkeinValidationError):
        relabel_heights(two_crossing, {h: h for h in used[:-1]})
    collapse = {h: 1 for h in used}
    with pytest.raises(SkeinValidationError):
        relabel_heights(two_crossing, collapse)


def test_canonical_form_idempotent(y_neg, two_crossing, two_component, unknot):
    for d in (y_neg, two_crossing, two_component, unknot):
        c1 = canonical_form(d)
        assert serialize_diagram(canonical_form(c1)) == serialize_diagram(c1)


def test_canonical_form_constant_on_symmetry_orbit(two_component):
    base = serialize_diagram(canonical_form(two_component))

    swapped = SkeinDiagram.make(list(two_component.components[::-1]), two_component.signs())
    assert serialize_diagram(canonical_form(swapped)) == base

    rot = SkeinDiagram.make(
        [rotate_component(two_component.components[0], 3), two_component.components[1]],
        two_component.signs(),
    )
    assert serialize_diagram(canonical_form(rot)) == base

    used = sorted({h for c in two_component.components for h in c.heights})
    relabeled = relabel_heights(two_component, {h: h * 3 + 1 for h in used})
    assert serialize_diagram(canonical_form(relabeled)) == base


def test_dedup_key_tracks_canonical_form(y_neg, y_pos, two_crossing, unknot):
    ds = [y_neg, y_pos, two_crossing, unknot]
    for a in ds:
        for b in ds:
            same_canon = serialize_diagram(canonical_form(a)) == serialize_diagram(canonical_form(b))
            assert (dedup_key(a) == dedup_key(b)) == same_canon

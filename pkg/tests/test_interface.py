import io
import json

import pytest

from encat.core import structural_equal
from encat.cli import KNOWN_LAWS, LAW_REGISTRY, cli, run_checks
from encat.equiv import bimodule_completion, module_to_cylinder
from encat.instances import build_cyc
from encat.interface import (
    Document,
    DuplicateIdError,
    ParseError,
    UnresolvedReferenceError,
    VersionMismatchError,
    parse,
    serialize,
)
from encat.monoidal import self_path, self_vstructure
from encat.vcat import self_enriched


def _all_documents(bool_m, trop3, cyc3, poset_cm, self_trop3):
    vs, cyl = module_to_cylinder(self_trop3.tensorClosed)
    return [
        Document("fincategory", bool_m.base),
        Document("monoidal", bool_m),
        Document("monoidal", trop3),
        Document("monoidal", cyc3),
        Document("vcategory", self_enriched(trop3)),
        Document("vstructure", self_vstructure(cyc3)),
        Document("cylinder", (vs, cyl)),
        Document("path", (self_vstructure(bool_m), self_path(bool_m))),
        Document("vmodule", poset_cm.tensorClosed.module),
        Document("tensorclosed", poset_cm.tensorClosed),
        Document("closedmodule", poset_cm),
        Document("bimodule", bimodule_completion(poset_cm)),
    ]


def test_serialize_parse_roundtrip(bool_m, trop3, cyc3, poset_cm, self_trop3):
    for doc in _all_documents(bool_m, trop3, cyc3, poset_cm, self_trop3):
        text = serialize(doc)
        again = parse(text)
        assert again.kind == doc.kind
        assert structural_equal(again.data, doc.data)
        assert serialize(again) == text  # canonical bytes are a fixed point


def test_documents_pass_their_checkers(bool_m, trop3, cyc3, poset_cm, self_trop3):
    for doc in _all_documents(bool_m, trop3, cyc3, poset_cm, self_trop3):
        assert run_checks(parse(serialize(doc))) == []


def test_syntax_error_position():
    with pytest.raises(ParseError) as err:
        parse("{\n  broken\n}")
    assert err.value.line == 2


def test_version_mismatch(bool_m):
    text = serialize(Document("fincategory", bool_m.base))
    text = text.replace("encat/1", "encat/9")
    with pytest.raises(VersionMismatchError):
        parse(text)


def test_unresolved_reference_points_at_token(bool_m):
    text = serialize(Document("fincategory", bool_m.base))
    bad = text.replace('"src": "0"', '"src": "ghost"', 1)
    with pytest.raises(UnresolvedReferenceError) as err:
        parse(bad)
    assert err.value.token == "ghost"
    assert err.value.line > 1


def test_duplicate_morphism_id(bool_m):
    payload = json.loads(serialize(Document("fincategory", bool_m.base)))
    payload["body"]["morphisms"].append(
        dict(payload["body"]["morphisms"][0]))
    with pytest.raises(DuplicateIdError) as err:
        parse(json.dumps(payload))
    assert err.value.token == payload["body"]["morphisms"][0]["id"]


def test_unknown_kind(bool_m):
    payload = json.loads(serialize(Document("fincategory", bool_m.base)))
    payload["kind"] = "mystery"
    with pytest.raises(ParseError):
        parse(json.dumps(payload))


def test_registry_is_part_of_known_laws():
    assert set(LAW_REGISTRY) <= set(KNOWN_LAWS)


def test_cli_check_flow(tmp_path):
    out = io.StringIO()
    doc = tmp_path / "bool.doc"
    assert cli(["instance", "bool", "-o", str(doc)], out=out) == 0
    assert cli(["check", str(doc)], out=out) == 0

    # a single mutated associator entry makes the coherence law fail
    cyc = build_cyc(3)
    import dataclasses

    bad = dataclasses.replace(cyc, assoc={("*", "*", "*"): "1"})
    bad_doc = tmp_path / "bad.doc"
    bad_doc.write_text(serialize(Document("monoidal", bad)), encoding="utf-8")
    out = io.StringIO()
    assert cli(["check", str(bad_doc), "--format", "json"], out=out) == 1
    records = json.loads(out.getvalue())["reports"]
    assert all(set(r) == {"law", "site", "lhs", "rhs"} for r in records)
    assert "pentagon" in {r["law"] for r in records}

    out = io.StringIO()
    assert cli(["check", str(bad_doc), "--laws", "pentagon"], out=out) == 1
    assert "pentagon" in out.getvalue()
    out = io.StringIO()
    assert cli(["check", str(bad_doc), "--laws", "nonsense"], out=out) == 2
    assert "known laws" in out.getvalue()


def test_cli_text_and_json_agree(tmp_path):
    import dataclasses

    cyc = build_cyc(3)
    bad = dataclasses.replace(cyc, assoc={("*", "*", "*"): "1"})
    doc = tmp_path / "bad.doc"
    doc.write_text(serialize(Document("monoidal", bad)), encoding="utf-8")
    text_out, json_out = io.StringIO(), io.StringIO()
    cli(["check", str(doc)], out=text_out)
    cli(["check", str(doc), "--format", "json"], out=json_out)
    records = json.loads(json_out.getvalue())["reports"]
    lines = [l for l in text_out.getvalue().splitlines() if l.startswith("FAIL")]
    assert len(lines) == len(records)
    for record in records:
        assert any(record["law"] in line for line in lines)


def test_cli_construct_and_roundtrip(tmp_path):
    out = io.StringIO()
    pm = tmp_path / "pm.doc"
    assert cli(["instance", "poset-diamond", "-o", str(pm)], out=out) == 0
    assert cli(["roundtrip", str(pm), "--pair", "module-cylinder"], out=out) == 0

    cylp = tmp_path / "cyl.doc"
    assert cli(["construct", str(pm), "--op", "module-to-cylinder",
                "-o", str(cylp)], out=out) == 0
    assert cli(["check", str(cylp)], out=out) == 0
    assert cli(["roundtrip", str(cylp), "--pair", "cylinder-tensored"], out=out) == 0

    back = tmp_path / "back.doc"
    assert cli(["construct", str(cylp), "--op", "cylinder-to-module",
                "-o", str(back)], out=out) == 0
    assert cli(["check", str(back)], out=out) == 0

    again = tmp_path / "cyl2.doc"
    assert cli(["construct", str(cylp), "--op", "cylinder-to-tensored",
                "-o", str(again)], out=out) == 0
    assert (tmp_path / "cyl.doc").read_text() == again.read_text()

    bim = tmp_path / "bm.doc"
    assert cli(["construct", str(pm), "--op", "bimodule-complete",
                "-o", str(bim)], out=out) == 0
    assert cli(["check", str(bim)], out=out) == 0

    ivs = tmp_path / "ivs.doc"
    assert cli(["construct", str(pm), "--op", "induced-vstructure",
                "-o", str(ivs)], out=out) == 0
    vcat = tmp_path / "vc.doc"
    assert cli(["construct", str(ivs), "--op", "associated-vcat",
                "-o", str(vcat)], out=out) == 0
    under = tmp_path / "under.doc"
    assert cli(["construct", str(vcat), "--op", "underlying",
                "-o", str(under)], out=out) == 0
    assert cli(["check", str(under)], out=out) == 0


def test_cli_error_exit_codes(tmp_path):
    out = io.StringIO()
    assert cli(["check", str(tmp_path / "missing.doc")], out=out) == 2
    assert cli(["instance", "octahedron", "-o", str(tmp_path / "x.doc")],
               out=out) == 2
    garbled = tmp_path / "garbled.doc"
    garbled.write_text("{not json", encoding="utf-8")
    assert cli(["check", str(garbled)], out=out) == 2

import json

import pytest

import vbalg


def test_example_names_listed():
    names = vbalg.example_names()
    assert "aff1-type1" in names
    assert "sl2-adjoint" in names


def test_example_is_flat():
    doc = vbalg.example("aff1-type1")
    out = vbalg.call("flat", document=doc)
    certs = [s for s in out["sections"] if s["type"] == "certificate"]
    assert certs[-1]["flat"] is True


def test_cs_k2_is_zero():
    doc = vbalg.example("random", seed=4)
    out = vbalg.call("cs", "--k", "2", document=doc)
    cert = [s for s in out["sections"] if s["type"] == "certificate"][-1]
    assert cert["zero"] is True


def test_document_dict_roundtrip():
    doc = json.loads(vbalg.example("sl2-adjoint"))
    out = vbalg.call("check", document=doc)
    assert out["valid"] is True


def test_errors_raise_with_exit_code():
    with pytest.raises(vbalg.CommandError) as info:
        vbalg.call("check", document="{")
    assert info.value.code == 2
    assert info.value.error["kind"] == "syntax"
    code, out, err = vbalg.run(["classify"], vbalg.example("rho-zero-scaled"))
    assert code == 1
    assert "error" in json.loads(err)


def test_format_version():
    assert vbalg.format_version() == "1"

import json
import math

import numpy as np
import pytest

from entrosep import io as fio
from entrosep.criteria import make_report
from entrosep.exceptions import DensityError, SchemaError
from entrosep.measurements import gsic_from_sic, qubit_pauli_mubs, sic_povm
from entrosep.states import qutrit_family


def test_state_round_trip():
    rho = qutrit_family(0.4)
    back = fio.state_from_json(json.loads(fio.dumps(fio.state_to_json(rho))))
    assert np.allclose(back.matrix, rho.matrix) and back.dims == (3, 3)


def test_measurement_round_trip():
    pairs = [(b, b) for b in qubit_pauli_mubs()]
    g = gsic_from_sic(sic_povm(2), 0.5).povm
    pairs.append((sic_povm(2), sic_povm(2)))
    obj = json.loads(fio.dumps(fio.measurement_set_to_json(pairs)))
    back, pairings = fio.measurement_set_from_json(obj)
    assert pairings is None and len(back) == 4
    assert np.allclose(back[0][0].vectors, pairs[0][0].vectors)
    gobj = json.loads(fio.dumps(fio.povm_to_json(g)))
    assert np.allclose(fio.povm_from_json(gobj).elements, g.elements)


def test_pairing_round_trip():
    pairs = [(b, b) for b in qubit_pauli_mubs()]
    obj = fio.measurement_set_to_json(pairs, [[1, 0], [0, 1], [1, 0]])
    _, pairings = fio.measurement_set_from_json(json.loads(fio.dumps(obj)))
    assert pairings == [[1, 0], [0, 1], [1, 0]]


def test_nan_rejected():
    with pytest.raises(SchemaError):
        fio.loads('{"matrix": [[[NaN, 0]]]}')


def test_decode_error_has_line():
    with pytest.raises(SchemaError) as err:
        fio.loads('{\n  "matrix": [\n  oops\n]}', "f.json")
    assert err.value.line == 3


@pytest.mark.parametrize("obj, path", [
    ({}, "$"),
    ({"matrix": [[1, 0], [0, 1]]}, "$.matrix[0][0]"),
    ({"matrix": [[[1, 0]], [[0, 0], [1, 0]]]}, "$.matrix"),
    ({"matrix": [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]], "dims": [2, 2]}, "$.dims"),
])
def test_schema_paths(obj, path):
    with pytest.raises(SchemaError) as err:
        fio.state_from_json(obj)
    assert err.value.path == path


def test_density_error_propagates():
    obj = {"matrix": fio.encode_array(np.diag([0.6, 0.5]))}
    with pytest.raises(DensityError):
        fio.state_from_json(obj)


def test_csv_columns_and_inf():
    rep = make_report("mu", {"alpha": math.inf, "beta": 0.5, "entropy": "renyi"}, 1.0, 0.5, "A")
    text = fio.reports_to_csv([rep])
    header, row = text.strip().split("\n")
    assert header.split(",") == list(fio.REPORT_COLUMNS)
    assert row.startswith("mu,inf,0.5,")
    assert row.endswith(",false")


def test_report_json():
    rep = make_report("mu", {"alpha": math.inf}, 1.0, 0.5, "A")
    d = json.loads(fio.dumps(rep.to_dict()))
    assert d["params"]["alpha"] == "inf" and d["violated"] is False

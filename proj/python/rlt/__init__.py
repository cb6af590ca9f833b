"""Robust Lindbladian tomography."""

import json as _json

from . import _rlt
from ._rlt import (
    ApplicabilityError,
    BranchCutError,
    ConfigError,
    DataError,
    Error,
    SingularityError,
    SolverError,
    analyze_unit,
    bch,
    channel_probabilities,
    cml,
    cmr,
    dcl,
    dcr,
    expm,
    hamiltonian_lindbladian,
    hs_to_cj,
    lindblad_physicality,
    lindbladian,
    logm,
    logm_near,
    pauli_basis,
    pauli_labels,
    pauli_string,
    period,
    qpt,
    singularity,
)


def _text(config):
    return config if isinstance(config, str) else _json.dumps(config)


def _report(r):
    return _json.loads(r["json"]), r["csv"]


def analyze(config):
    """Returns (report, csv) for a config given as a dict or JSON text."""
    return _report(_rlt.analyze(_text(config)))


def verify(config):
    return _report(_rlt.verify(_text(config)))


def simulate(config):
    """Returns a dict mapping data file names to parsed JSON documents."""
    return {k: _json.loads(v) for k, v in _rlt.simulate(_text(config)).items()}


def fit(config, files):
    texts = {k: v if isinstance(v, str) else _json.dumps(v) for k, v in files.items()}
    return _report(_rlt.fit(_text(config), texts))

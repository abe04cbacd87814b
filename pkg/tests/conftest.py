import numpy as np
import pytest

from motifseek.genmodel import Alphabet
from motifseek.params import derive_and_validate_params

WORKED_ALPHABET = Alphabet("ACGTS")
WORKED_MOTIF = "TTTTTAACGATTAGCS"
WORKED_Z1 = [
    "GTACCATGGATTATTAACGATTAGCSTAGAGGACCTA",
    "AATCCTTACTTTTAACGATTAGCSGTC",
]
WORKED_Z2 = [
    "ATTCGATCCAGTTTTTAACGGTTAGCSCAATTACTTAG",
    "GCATTGCATTTTTTAACGATTACCSGTACTTAGCTAGATC",
    "TCAGGGCATCGAGACTTTTTAGCGATTAGCSCTAGAATCAGACCT",
    "GTACCTGGCATTGAACGTTTTTAACGATTAGCATGCAGATGGACCTTTA",
    "AATGGATCAGATTTTTAACGATTCGCSCTAGATTCAG",
]
WORKED_OVERRIDES = {"window_override": 11, "epsilon": 0.17, "v": 3}


@pytest.fixture
def worked_alphabet():
    return WORKED_ALPHABET


@pytest.fixture
def worked_sets():
    z1 = [WORKED_ALPHABET.encode(s) for s in WORKED_Z1]
    z2 = [WORKED_ALPHABET.encode(s) for s in WORKED_Z2]
    return z1, z2


@pytest.fixture
def worked_params():
    params, _ = derive_and_validate_params(WORKED_ALPHABET.size, 10, WORKED_OVERRIDES, n=48)
    return params


@pytest.fixture
def desk_params():
    """t = 4, n = 600, w = 12, no mutation."""
    params, _ = derive_and_validate_params(4, 10, {"alpha": 0.0, "window_override": 12}, n=600)
    return params


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

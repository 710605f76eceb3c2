from pathlib import Path

import pytest

from pcsample import FeatureModel, PresenceCondition, preprocess
from pcsample.io import parse_sample_csv, read_dimacs

FIXTURES = Path(__file__).parent / "fixtures"
RUNNING = FIXTURES / "running_example"

# feature indices of the running example (order of first appearance in tftp.c)
G, P, T, B, D = 1, 2, 3, 4, 5

RAW_PCS = [
    "1",
    "TFTP_GET || TFTP_PUT",
    "(TFTP_GET || TFTP_PUT) && TFTP",
    "(TFTP_GET || TFTP_PUT) && TFTP && TFTP_BLOCKSIZE",
    "(TFTP_GET || TFTP_PUT) && TFTP && TFTP_DEBUG",
]


def pc(*clauses):
    return PresenceCondition.of(clauses)


# universe in the order printed after preprocessing the running example
EXPECTED_UNIVERSE = [
    pc([G], [P]),
    pc([G, T], [P, T]),
    pc([G, T, B], [P, T, B]),
    pc([G, T, D], [P, T, D]),
    pc([-G, -P]),
    pc([-G, -P], [-T]),
    pc([-G, -P], [-T], [-B]),
    pc([-G, -P], [-T], [-D]),
]

FAULT = pc([-B, G, T, D], [-B, P, T, D])


@pytest.fixture
def tftp_model() -> FeatureModel:
    return read_dimacs(RUNNING / "tftp5.dimacs")


@pytest.fixture
def universe(tftp_model):
    return preprocess(RAW_PCS, tftp_model)


@pytest.fixture
def incling(tftp_model):
    return parse_sample_csv((RUNNING / "incling.csv").read_text(), tftp_model)


@pytest.fixture
def presice_table(tftp_model):
    return parse_sample_csv((RUNNING / "presice.csv").read_text(), tftp_model)


@pytest.fixture
def busybox_model() -> FeatureModel:
    # TFTP_PUT -> TFTPD -> BUSYBOX_TFTP
    names = ("TFTP_GET", "TFTP_PUT", "TFTP", "TFTP_BLOCKSIZE", "TFTP_DEBUG", "TFTPD", "BUSYBOX_TFTP")
    return FeatureModel(names, ((-2, 6), (-6, 7)))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

import pytest

from nodal_void.disk_spectrum import certify_nondegenerate, first_mode, scan_admissible

# regression fixture: admissible N in [100, 400] at double precision
ADMISSIBLE_100_400 = [
    105, 111, 117, 123, 129, 130, 136, 142, 148, 154, 160, 166, 172, 173, 179, 185, 191, 197,
    203, 210, 216, 222, 228, 234, 240, 241, 247, 253, 259, 265, 271, 278, 284, 290, 296, 302,
    309, 315, 321, 327, 333, 340, 346, 352, 358, 364, 365, 371, 377, 383, 389, 395, 396,
]
FIRST_ADMISSIBLE = 105


@pytest.fixture(scope="session")
def admissible_100_400():
    return scan_admissible(100, 400)


@pytest.fixture(scope="session")
def first_n():
    return FIRST_ADMISSIBLE


@pytest.fixture(scope="session")
def first_cert(first_n):
    return certify_nondegenerate(first_n)


@pytest.fixture(scope="session")
def first_mode_105(first_n):
    return first_mode(first_n)


@pytest.fixture(scope="session")
def void_cert(first_n):
    from nodal_void.voidcert import certify_void

    return certify_void(first_n)


ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)

"""Runs the acceptance suites

Three suites are checked:

    random
      - Random complexes. The dimension from the Fitting ideals must equal the dimension from the
        homology, the dual dimension must equal the dimension of the dual complex, the rank and
        grade test must agree with the homology and the dual dimension must lie within its
        homology bounds.
    koszul
      - Koszul complexes on random sequences. Their dimension must be the dimension of the
        quotient by the sequence.
    shift
      - Shifting a complex by k steps lowers its dimension by k.

Every verified random complex is recorded in the results database if one is configured.

The script opens a configuration.yaml file, where some configuration options are defined. The path
to this file is given at the beginning of this script as a global variable 'CONFIG_FILE'. An
example configuration file is part of the fitdim repository.

In the configuration file, the following information must be given:

    field, order
      - Coefficient field and monomial order
    random: vars, maxdeg, maxrank, len, blocks, basis_changes
      - Limits of the random complexes
    acceptance: seed, random, koszul
      - Seed and sizes of the suites
    timeout_ms
      - Time budget per Gröbner basis
    database
      - SQLite results file or null

"""
import logging
import sys

from fitdim_utils import cli, complexes, dimform, generate, utils
from fitdim_utils.database.main import ResultsDataBase
from fitdim_utils.exceptions import GroebnerTimeout
from fitdim_utils.groebner import IdealHandle, time_budget
from fitdim_utils.krull import dim_quotient

CONFIG_FILE = "example_cfg.yaml"
SHIFTS = (-2, -1, 1, 2)
SHIFT_SUITE_SIZE = 20

logger = logging.getLogger(__name__)


def _main(cfg_file):
    cfg = utils.get_cfg(cfg_file)
    utils.setup_logging(cfg['log_level'])
    print("Starting main")
    failures = 0
    failures += _random_suite(cfg)
    failures += _koszul_suite(cfg)
    failures += _shift_suite(cfg)
    print("All suites passed" if failures == 0 else f"{failures} failures")
    return 0 if failures == 0 else 1


def _suite(cfg, count, seed_offset=0):
    params = cfg['random']
    return generate.random_suite(cfg['acceptance']['seed'] + seed_offset, count, params['vars'],
                                 params['maxdeg'], params['maxrank'], params['len'],
                                 params['blocks'], params['basis_changes'], cfg['field'],
                                 cfg['order'])


def _random_suite(cfg):
    rows = []
    failures = 0
    timeouts = 0
    for cplx in _suite(cfg, cfg['acceptance']['random']):
        try:
            with time_budget(cfg['timeout_ms']):
                outcome = cli.verify_complex(cplx)
        except GroebnerTimeout:
            logger.warning("Time budget exceeded for %s", cplx.name)
            timeouts += 1
            continue
        rows.append((cli.render_document(cplx), outcome, cplx.name))
        if not outcome.agree:
            failures += 1
            for failure in outcome.failures:
                print(f"{cplx.name}: {failure}")
    print(f"random: {len(rows) - failures}/{len(rows)} agree, {timeouts} timeouts")
    if cfg['database']:
        with ResultsDataBase(cfg['database']) as data_base:
            for document, outcome, name in rows:
                data_base.add_run(document, outcome, seed=cfg['acceptance']['seed'], name=name)
    return failures


def _koszul_suite(cfg):
    failures = 0
    count = cfg['acceptance']['koszul']
    family = generate.koszul_family(cfg['acceptance']['seed'], count, cfg['random']['vars'],
                                    maxdeg=cfg['random']['maxdeg'], field=cfg['field'],
                                    order=cfg['order'])
    for sequence, cplx in family:
        expected = dim_quotient(IdealHandle(cplx.ring, sequence))
        result = dimform.dim_via_fitting(cplx).result
        if result != expected:
            failures += 1
            print(f"{cplx.name}: dim = {result} but dim R/I = {expected}")
    print(f"koszul: {count - failures}/{count} agree")
    return failures


def _shift_suite(cfg):
    failures = 0
    for cplx in _suite(cfg, SHIFT_SUITE_SIZE, seed_offset=1):
        dim = dimform.dim_via_fitting(cplx).result
        for steps in SHIFTS:
            shifted = dimform.dim_via_fitting(complexes.shift(cplx, steps)).result
            if shifted != dim - steps:
                failures += 1
                print(f"{cplx.name}: shift by {steps} gives {shifted}, expected {dim - steps}")
    print(f"shift: {failures} failures in {SHIFT_SUITE_SIZE * len(SHIFTS)} shifts")
    return failures


if __name__ == "__main__":
    sys.exit(_main(CONFIG_FILE))

"""Writes a random suite of complex documents

The documents can be fed to the fitdim command one by one, or to other computer algebra systems
for comparison. Complex number i of the suite only depends on the seed and on i.

The script opens a configuration.yaml file, where some configuration options are defined. The path
to this file is given at the beginning of this script as a global variable 'CONFIG_FILE'. An
example configuration file is part of the fitdim repository.

In the configuration file, the following information must be given:

    field
      - Coefficient field, QQ or Fp(p)
    order
      - Monomial order, lex or grevlex
    random: vars, maxdeg, maxrank, len, blocks, basis_changes
      - Limits of the random complexes
    acceptance: seed, random
      - Seed and size of the suite
    output: suite
      - Output folder of the documents

"""
import logging

from fitdim_utils import cli, generate, utils

CONFIG_FILE = "example_cfg.yaml"

logger = logging.getLogger(__name__)


def _main(cfg_file):
    cfg = utils.get_cfg(cfg_file)
    utils.setup_logging(cfg['log_level'])
    print("Starting main")
    params = cfg['random']
    seed = cfg['acceptance']['seed']
    folder = utils.make_folder(cfg['output']['suite'], f"seed_{seed}")
    suite = generate.random_suite(seed, cfg['acceptance']['random'], params['vars'],
                                  params['maxdeg'], params['maxrank'], params['len'],
                                  params['blocks'], params['basis_changes'], cfg['field'],
                                  cfg['order'])
    for cplx in suite:
        path = folder + cplx.name + ".cplx"
        with open(path, "w", encoding="utf-8") as outfile:
            outfile.write(cli.render_document(cplx))
        logger.info("Wrote %s", path)
    print(folder)


if __name__ == "__main__":
    _main(CONFIG_FILE)

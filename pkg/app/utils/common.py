import logging
import logging.config
import os
from typing import Optional

from app.dependencies import get_settings

# logging.conf lives in the project root, two levels above this package.
LOGGING_CONF = os.path.normpath(os.path.join(os.path.dirname(__file__), '..', '..', 'logging.conf'))


def setup_logging(debug: Optional[bool] = None):
    """
    Configures the `app` loggers from logging.conf for both the CLI and the HTTP API.

    Records go to stderr so stdout stays machine-readable. With `debug`
    (default: the `debug` setting) the per-stage sizes logged by the solvers
    are shown as well.
    """
    logging.config.fileConfig(LOGGING_CONF, disable_existing_loggers=False)
    if get_settings().debug if debug is None else debug:
        logging.getLogger("app").setLevel(logging.DEBUG)

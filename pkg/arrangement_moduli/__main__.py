import sys, logging
from arrangement_moduli import main
# Useful for debugging; reports go to stdout so the log goes to stderr
logging.basicConfig(format='%(levelname)s:%(message)s', level=logging.DEBUG, stream=sys.stderr)
LOGGER = logging.getLogger(__name__)
LOGGER.debug('Logging at DEBUG to stderr')
sys.exit(main())

from .checks import CHECKS
from .config import SUPPORTED_COMMANDS
from .errors import ConfigError
from .run_config import RunConfig


class SymflagTool:
    def __init__(self, config: RunConfig, verbose=False, debug=False):
        self.config = config.validate()
        self.verbose = verbose

        # Resolve the command before instantiating the check that runs it
        check_name = SUPPORTED_COMMANDS.get(config.command)
        if check_name not in CHECKS:
            raise ConfigError(f"Unknown command: {config.command}")
        self.tool = CHECKS[check_name](config, verbose, debug)

    def __getattr__(self, name):
        """
        Delegate attribute access to the check.
        This method is called only if `name` is not found in `SymflagTool`.
        """
        return getattr(self.tool, name)

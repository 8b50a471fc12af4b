from k3b.launcher.config import CliConfig, load_config
from k3b.launcher.run_cli import get_arg_parser, main

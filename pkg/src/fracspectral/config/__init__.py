from .run_config import RunConfig, ProblemConfig, DataConfig, NumericsConfig, OutputConfig, \
                        parse_config, emit_config, example_config, load_config, save_config

__all__ = ["RunConfig", "ProblemConfig", "DataConfig", "NumericsConfig", "OutputConfig",
           "parse_config", "emit_config", "example_config", "load_config", "save_config"]

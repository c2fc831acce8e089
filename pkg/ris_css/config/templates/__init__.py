from ris_css.config.templates.env_template import ENV_TEMPLATE
from ris_css.config.templates.experiment_json_template import EXPERIMENT_CONFIG_TEMPLATE

__all__ = ["ENV_TEMPLATE", "EXPERIMENT_CONFIG_TEMPLATE"]

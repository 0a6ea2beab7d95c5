"""Model domain enums."""

from enum import Enum


class CausalMode(str, Enum):
    """Ablation arm for the style-to-semantic link."""

    NONE = "none"  # z x s
    STRONG = "strong"  # z -> s
    WEAK = "weak"  # z -> s, regularized by the intervention loss

    @property
    def links_style(self) -> bool:
        """Whether z enters the prior network and the content head."""
        return self is not CausalMode.NONE


class Activation(str, Enum):
    """Hidden nonlinearity of the component MLPs."""

    SILU = "silu"
    TANH = "tanh"
    IDENTITY = "identity"

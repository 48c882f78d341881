"""Convolutional curve regressor with spatial pyramid pooling.

The network consumes a single-channel adjacency image of any side length and
emits a fixed-length robustness curve.  Variable input sizes are absorbed by
an adaptive max-pooling pyramid between the convolutional trunk and the fully
connected head, so the flattened feature vector has the same width no matter
how large the graph is.
"""

from __future__ import annotations

from dataclasses import dataclass

import torch
from torch import nn


@dataclass
class ModelConfig:
    """Architecture knobs for :class:`CurveRegressor`.

    The defaults give the full-size evaluator: eight convolution groups that
    double the channel count every other group, a 5x5 kernel in the third
    group and 3x3 everywhere else, one extra convolution in the last group,
    and a four-level pooling pyramid feeding a single hidden layer.
    """

    conv_channels: tuple = (64, 64, 64, 128, 128, 256, 256, 512)
    conv_kernels: tuple = (3, 3, 5, 3, 3, 3, 3, 3)
    conv_repeats: tuple = (1, 1, 1, 1, 1, 1, 1, 2)
    spp_levels: tuple = (4, 3, 2, 1)
    hidden_size: int = 4096
    curve_length: int = 100

    def __post_init__(self):
        groups = len(self.conv_channels)
        if groups == 0:
            raise ValueError("need at least one convolution group")
        if len(self.conv_kernels) != groups or len(self.conv_repeats) != groups:
            raise ValueError("conv_channels, conv_kernels and conv_repeats must align")
        if any(c < 1 for c in self.conv_channels):
            raise ValueError("channel counts must be positive")
        if any(k < 1 or k % 2 == 0 for k in self.conv_kernels):
            raise ValueError("kernel sizes must be odd and positive")
        if any(r < 1 for r in self.conv_repeats):
            raise ValueError("conv_repeats entries must be positive")
        if not self.spp_levels or any(level < 1 for level in self.spp_levels):
            raise ValueError("spp_levels must be positive")
        if self.hidden_size < 1 or self.curve_length < 1:
            raise ValueError("hidden_size and curve_length must be positive")

    @property
    def min_input_side(self):
        """Smallest side the trunk can halve through every pooling stage."""
        return 2 ** len(self.conv_channels)

    @property
    def feature_width(self):
        """Width of the flattened pyramid output feeding the head."""
        cells = sum(level * level for level in self.spp_levels)
        return cells * self.conv_channels[-1]


class SpatialPyramidPool(nn.Module):
    """Adaptive max pooling at several grid resolutions, concatenated flat."""

    def __init__(self, levels):
        super().__init__()
        self.levels = tuple(levels)

    def forward(self, x):
        batch = x.shape[0]
        pieces = []
        for level in self.levels:
            pooled = nn.functional.adaptive_max_pool2d(x, level)
            pieces.append(pooled.reshape(batch, -1))
        return torch.cat(pieces, dim=1)


class CurveRegressor(nn.Module):
    """Conv trunk, pooling pyramid and a two-layer regression head."""

    def __init__(self, config=None):
        super().__init__()
        if config is None:
            config = ModelConfig()
        self.config = config
        layers = []
        in_channels = 1
        for out_channels, kernel, repeats in zip(
            config.conv_channels, config.conv_kernels, config.conv_repeats
        ):
            for _ in range(repeats):
                layers.append(
                    nn.Conv2d(
                        in_channels,
                        out_channels,
                        kernel_size=kernel,
                        stride=1,
                        padding=kernel // 2,
                    )
                )
                layers.append(nn.ReLU(inplace=True))
                in_channels = out_channels
            layers.append(nn.MaxPool2d(kernel_size=2, stride=2, ceil_mode=True))
        self.features = nn.Sequential(*layers)
        self.pyramid = SpatialPyramidPool(config.spp_levels)
        self.head = nn.Sequential(
            nn.Linear(config.feature_width, config.hidden_size),
            nn.ReLU(inplace=True),
            nn.Linear(config.hidden_size, config.curve_length),
        )
        self._reset_parameters()

    def _reset_parameters(self):
        """ReLU-gain init for every layer feeding a ReLU, small output layer.

        The framework default underscales deep ReLU stacks; with it this
        trunk spends most of a short training budget escaping the
        constant-output regime before the image starts to matter.
        """
        for module in self.features.modules():
            if isinstance(module, nn.Conv2d):
                nn.init.kaiming_normal_(module.weight, nonlinearity="relu")
                nn.init.zeros_(module.bias)
        hidden, output = self.head[0], self.head[2]
        nn.init.kaiming_normal_(hidden.weight, nonlinearity="relu")
        nn.init.zeros_(hidden.bias)
        nn.init.xavier_uniform_(output.weight)
        nn.init.zeros_(output.bias)

    def forward(self, x):
        if x.dim() != 4 or x.shape[1] != 1:
            raise ValueError("expected input of shape [batch, 1, side, side]")
        feats = self.features(x)
        flat = self.pyramid(feats)
        return self.head(flat)


def build_model(config=None):
    """Construct a :class:`CurveRegressor`, validating the configuration."""
    return CurveRegressor(config)


def save_model(model, path):
    """Persist the weights together with the architecture that shaped them."""
    from dataclasses import asdict

    torch.save(
        {"config": asdict(model.config), "state_dict": model.state_dict()}, path
    )


def load_model(path):
    """Rebuild a saved model in eval mode."""
    payload = torch.load(path, map_location="cpu", weights_only=False)
    raw = payload["config"]
    config = ModelConfig(
        conv_channels=tuple(raw["conv_channels"]),
        conv_kernels=tuple(raw["conv_kernels"]),
        conv_repeats=tuple(raw["conv_repeats"]),
        spp_levels=tuple(raw["spp_levels"]),
        hidden_size=raw["hidden_size"],
        curve_length=raw["curve_length"],
    )
    model = CurveRegressor(config)
    model.load_state_dict(payload["state_dict"])
    model.eval()
    return model

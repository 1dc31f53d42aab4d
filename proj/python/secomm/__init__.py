# SPDX-License-Identifier: Apache-2.0
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Python front end for the secomm allocation solver."""

import json as _json
import pkgutil as _pkgutil

# Lets a build-tree copy of the compiled module satisfy the import during development.
__path__ = _pkgutil.extend_path(__path__, __name__)

from ._core import (
    ConfigError,
    DomainError,
    InfeasibleError,
    PreconditionError,
    csv_header,
    read_sweep_csv,
    version,
)
from . import _core


def solve(config=None):
    """Solve the scenario described by ``config`` (a dict of config keys)."""
    return _core.solve(_json.dumps(config or {}))


def sweep_csv(config=None):
    """Run the sweep described by ``config`` and return the CSV text."""
    return _core.sweep_csv(_json.dumps(config or {}))


__all__ = [
    "ConfigError",
    "DomainError",
    "InfeasibleError",
    "PreconditionError",
    "csv_header",
    "read_sweep_csv",
    "solve",
    "sweep_csv",
    "version",
]

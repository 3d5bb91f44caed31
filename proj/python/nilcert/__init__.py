# Copyright 2026 The nilcert Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Certificates for membership in Nil U and sqrt U over free rings.

Certificates cross the boundary as their JSON text, so anything produced
here can be handed to the ``nilcert check`` command unchanged.
"""

from ._nilcert import (
    Verdict,
    check,
    demo,
    emit_proof_log,
    intersect,
    normalize,
    permute,
    product,
)

__all__ = [
    "Verdict",
    "check",
    "demo",
    "emit_proof_log",
    "intersect",
    "normalize",
    "permute",
    "product",
]

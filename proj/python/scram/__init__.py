"""Joint LDPC / slotted-random-access decoding laboratory.

The heavy lifting lives in the compiled ``scram._scram`` extension; this
package re-exports its surface.
"""

from ._scram import *  # noqa: F401,F403
from ._scram import __version__  # noqa: F401

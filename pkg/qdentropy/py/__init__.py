# import various
from . import utils
from . import dataproc
from . import plot

# Copyright (c) 2017 Aimirim STI.

from .tables import Tcavity, Tpdh, Tscan, Tnoise, Tplant, Tservo, Tscenario

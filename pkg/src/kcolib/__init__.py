from kcolib.graph import (Graph, Colouring, RandomStream, generate_gnp,
                          read_graph, write_graph)
from kcolib.graph import (rCST, uMode, uStatus, uComp, uStream)
from kcolib.schedule import (build_schedule, audit_schedule, default_threshold)
from kcolib.basesmp import (sample_base)
from kcolib.switching import (step, disagreement_component, q_switch)
from kcolib.pipeline import (RunConfig, RunLog, run, sample_many)

__version__ = '0.1.0'

'''
This module contains the exceptions raised
by the simulator and the analysis tools.\n
Copyright (c) 2017 Aimirim STI.\n
'''

#######################################

class CavsimError(Exception):
    ''' Base error. Like an HTTP error it carries a `detail` message and the
    process `exit_code` the command line should return.\n
    `detail` (str): One line description of the failure.\n
    '''
    exit_code = 1
    kind = 'error'

    def __init__(self, detail:str):
        super().__init__(detail)
        self.detail = detail

class ValidationFailure(CavsimError, ValueError):
    ''' Invalid input: malformed file, violated invariant, unknown preset
    or unmet precondition.\n
    '''
    exit_code = 1
    kind = 'validation'

class AnalysisFailure(CavsimError, RuntimeError):
    ''' An analysis could not produce a result: fit divergence, missing
    peaks, lock lost during a measurement.\n
    '''
    exit_code = 2
    kind = 'analysis'

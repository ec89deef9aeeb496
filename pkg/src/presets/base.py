'''
Lookup of the shipped presets in the defaults file.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* pydantic
'''

# Import system libs
from pathlib import Path
from typing import List
from pydantic import ValidationError

# Import custom libs
from ..env import Enviroment as Env
from ..errors import ValidationFailure

#######################################

class Tpreset:
    ''' Base of the preset tables. Subclasses name their section of the
    defaults file and the schema its entries parse into.\n
    '''
    SECTION = ''
    SCHEMA = None

    # --------------------
    @classmethod
    def get_names(cls) -> List[str]:
        ''' List the preset names of this table.\n
        return (list): Names in file order.\n
        '''
        return(list(Env.DEFAULTS[cls.SECTION].keys()))
    # --------------------

    # --------------------
    @classmethod
    def get_raw(cls, name:str) -> dict:
        if name not in Env.DEFAULTS[cls.SECTION]:
            raise ValidationFailure(f"unknown {cls.SECTION.lower()} preset '{name}', "
                f"valid: {', '.join(cls.get_names())}")
        return(dict(Env.DEFAULTS[cls.SECTION][name]))
    # --------------------

    # --------------------
    @classmethod
    def get_defaults(cls, name:str):
        ''' Parse a preset.\n
        `name` (str): Preset name.\n
        return (BaseModel): The preset as its schema.\n
        '''
        return(cls.SCHEMA.parse_obj(cls.get_raw(name)))
    # --------------------

    # --------------------
    @classmethod
    def resolve(cls, value:str):
        ''' Accept a preset name or the path of a json file.\n
        `value` (str): Name or path.\n
        return (BaseModel): The parsed configuration.\n
        '''
        path = Path(value)
        if value.endswith('.json') or path.is_file():
            if not path.is_file():
                raise ValidationFailure(f"config file '{value}' not found")
            try:
                return(cls.SCHEMA.parse_file(path))
            except ValidationError as exc:
                raise ValidationFailure(f"invalid {cls.SECTION.lower()} config '{value}': "
                    + '; '.join(f"{'.'.join(map(str,e['loc']))}: {e['msg']}" for e in exc.errors()))
            except ValueError as exc:
                raise ValidationFailure(f"malformed json in '{value}': {exc}")
        return(cls.get_defaults(value))
    # --------------------

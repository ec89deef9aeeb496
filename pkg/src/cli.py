'''
Helpers shared by the command modules: provenance
stamps, result output and the one line failure diagnostic.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
* pydantic
'''

# Import system libs
import click
from pydantic import BaseModel

# Import custom libs
from .env import Enviroment as Env
from .trace.io import config_hash, dump_json, write_json, _plain

#######################################

seed_option = click.option('--seed', type=int, default=0, show_default=True,
    help='Seed of every random draw.')

# --------------------
def stamp(payload, *configs, seed:int=0) -> dict:
    ''' Add seed, config hash and creator to a result.\n
    `payload` (BaseModel|dict): Result to publish.\n
    `configs`: Configurations that produced it.\n
    `seed` (int): Seed used.\n
    return (dict): Json ready result.\n
    '''
    data = _plain(payload) if isinstance(payload, BaseModel) else dict(_plain(payload))
    data['seed'] = seed
    data['config_hash'] = config_hash(*configs, {'seed': seed})
    data['created_by'] = Env.CREATED_BY
    return(data)
# --------------------

# --------------------
def emit(payload, out:str=None):
    ''' Write a result to `out`, or print it when no path is given.\n '''
    if out:
        write_json(payload, out)
    else:
        click.echo(dump_json(payload), nl=False)
# --------------------

# --------------------
def diagnostic(kind:str, command:str, detail:str) -> str:
    ''' Machine parsable failure line.\n '''
    text = ' '.join(str(detail).split()).replace('"', "'")
    return(f'error={kind} command={command or "cavsim"} detail="{text}"')
# --------------------

# --------------------
def config_or_preset(table, config:str, preset:str, default:str=None):
    ''' Resolve the `--config` file or the `--preset` name of a table.\n
    `table` (Tpreset): Preset table.\n
    `config` (str): Json file path.\n
    `preset` (str): Preset name.\n
    `default` (str): Preset used when neither is given.\n
    return (BaseModel): The parsed configuration.\n
    '''
    if config and preset:
        raise click.UsageError('give either a json file or a preset name, not both')
    value = config or preset or default
    if value is None:
        raise click.UsageError('a json file or a preset name is required')
    return(table.resolve(value))
# --------------------

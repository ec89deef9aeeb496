'''
This module executes the command line
of the cavity simulator.\n
Copyright (c) 2017 Aimirim STI.\n
## Dependencies are:
* click
* pydantic
'''

# Import system libs
import sys
import logging
import click
from pydantic import ValidationError

# Import custom libs
from . import AppInfo
from .env import Enviroment as Env
from .errors import CavsimError
from .cli import diagnostic
from .cavity import commands as cavity_cmds
from .pdh import commands as pdh_cmds
from .vibration import commands as vibration_cmds
from .servo import commands as servo_cmds
from .analysis import commands as analysis_cmds
from .scenario import commands as scenario_cmds

#######################################

class CavsimGroup(click.Group):
    ''' Command group that turns every failure into one stderr line and the
    exit status of its error kind.\n
    '''

    def invoke(self, ctx):
        try:
            return(super().invoke(ctx))
        except (CavsimError, ValidationError) as exc:
            exc.command = ctx.invoked_subcommand
            raise

    def main(self, args=None, prog_name=None, **extra):
        extra['standalone_mode'] = False
        try:
            code = super().main(args=args, prog_name=prog_name, **extra)
        except click.UsageError as exc:
            name = exc.ctx.info_name if exc.ctx is not None else None
            click.echo(diagnostic('validation', name, exc.format_message()), err=True)
            sys.exit(1)
        except click.ClickException as exc:
            click.echo(diagnostic('validation', None, exc.format_message()), err=True)
            sys.exit(1)
        except click.Abort:
            click.echo(diagnostic('validation', None, 'aborted'), err=True)
            sys.exit(1)
        except CavsimError as exc:
            click.echo(diagnostic(exc.kind, getattr(exc, 'command', None), exc.detail), err=True)
            sys.exit(exc.exit_code)
        except ValidationError as exc:
            detail = '; '.join(f"{'.'.join(map(str,e['loc']))}: {e['msg']}" for e in exc.errors())
            click.echo(diagnostic('validation', getattr(exc, 'command', None), detail), err=True)
            sys.exit(1)
        sys.exit(code if isinstance(code, int) else 0)

@click.group(cls=CavsimGroup, help=AppInfo.description)
@click.version_option(AppInfo.version, prog_name='cavsim')
@click.option('-v', '--verbose', is_flag=True, help='Log debug messages on stderr.')
def app(verbose:bool):
    logging.basicConfig(level=logging.DEBUG if verbose else logging.WARNING,
        format=Env.LOG_FORMAT, stream=sys.stderr, force=True)

# Application Commands

### Cavity
app.add_command(cavity_cmds.derive, name='derive')

### PDH
app.add_command(pdh_cmds.scan, name='scan')

### Vibration
app.add_command(vibration_cmds.synth_noise, name='synth-noise')

### Servo
app.add_command(servo_cmds.lock, name='lock')
app.add_command(servo_cmds.bode, name='bode')

### Analysis
app.add_command(analysis_cmds.fit_scan, name='fit-scan')
app.add_command(analysis_cmds.calibrate_error, name='calibrate-error')
app.add_command(analysis_cmds.err2len, name='err2len')
app.add_command(analysis_cmds.ifm_calib, name='ifm-calib')
app.add_command(analysis_cmds.asd, name='asd')
app.add_command(analysis_cmds.rms, name='rms')
app.add_command(analysis_cmds.loss_budget, name='loss-budget')

### Scenarios
app.add_command(scenario_cmds.scenario, name='scenario')

if __name__=='__main__':
    app()

from __future__ import unicode_literals

import sys

from django.core.management import call_command
from django.core.management.base import CommandError

from informative_selection import conf


COMMANDS = ('converge', 'audit', 'couple', 'enumerate')
USAGE = ('usage: informative-selection {%s} --config PATH [--out PATH] [--seed U64] [--quiet]\n'
         % ','.join(COMMANDS))


def main(argv=None):
    """ Exit codes: 0 success, 2 bad arguments or config, 3 failed run """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] not in COMMANDS:
        sys.stderr.write(USAGE)
        return 2

    conf.setup()
    try:
        call_command(argv[0], *argv[1:])
    except CommandError as error:
        sys.stderr.write('%s\n' % error)
        # argument parsing errors come with the default return code
        return 2 if error.returncode == 1 else error.returncode
    return 0


if __name__ == '__main__':
    sys.exit(main())

from .parse import command as parse
from .check import command as check
from .search import search, count
from .hosszu import command as hosszu
from .verify import verify, verify_all

all_commands = [parse, check, search, count, hosszu, verify, verify_all]

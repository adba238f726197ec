# Newton polygon and branch expansion package

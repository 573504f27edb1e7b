from informative_selection import conf

conf.setup()

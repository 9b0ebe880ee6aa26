// built with the rest of the suite

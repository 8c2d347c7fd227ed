# core package — configuration, errors, rationals and exact linear algebra

# Domain model, errors and tolerances shared by every ghdist module

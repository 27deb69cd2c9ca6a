namespace akv {}

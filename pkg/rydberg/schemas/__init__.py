# Pydantic models shared by the services, the CLI and the API

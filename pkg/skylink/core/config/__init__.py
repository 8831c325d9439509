# Auto-generated for Python module recognition

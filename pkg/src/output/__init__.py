from .export import OutputExporter, profile_csv_text, read_profile_csv, to_json_text, write_json

__all__ = ['OutputExporter', 'profile_csv_text', 'read_profile_csv', 'to_json_text', 'write_json']

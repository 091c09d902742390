"""cnpd tests."""

"""Test suite for evenset."""

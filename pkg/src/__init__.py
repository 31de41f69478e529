# Source package for the Binary Tree Kinship Toolkit
__version__ = "1.0.0"

"""QSPBranch"""

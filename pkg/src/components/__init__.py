"""命令视图"""

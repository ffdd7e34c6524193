"""精确计算库：标量、矩阵、表示、余理想与分支"""

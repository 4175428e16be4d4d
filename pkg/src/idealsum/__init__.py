"""
idealsum - 序列可和性分析工具
理想收敛、矩阵族统计收敛与 Orlicz 强可和性的有限尺度检验
"""

__version__ = '1.0.0'
__author__ = 'idealsum contributors'

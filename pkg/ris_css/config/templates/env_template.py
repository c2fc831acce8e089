# .env 文件模板
ENV_TEMPLATE = """# 环境变量文件
# 日志级别：DEBUG / INFO / WARNING
# RIS_CSS_LOG_LEVEL=INFO
# 开发模式日志格式（带文件名与行号）：1 开启，0 关闭
# RIS_CSS_DEV=1
# 蒙特卡洛仿真默认并行进程数
# RIS_CSS_WORKERS=1
"""
